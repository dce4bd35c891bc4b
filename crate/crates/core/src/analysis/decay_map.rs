//! Decay rates of the two shift-induced subradiant modes over a 2D grid of
//! frequency shifts.
//!
//! With two shifted atoms in a Bragg array the single-excitation space splits
//! into an invariant three-dimensional block, spanned by the two shifted atoms
//! and the bright combination of the unshifted ones, plus permanently dark
//! states of the unshifted atoms. Each cell diagonalizes the block, drops its
//! superradiant mode and keeps the other two. Labels are carried from cell to
//! cell by maximal left/right eigenvector overlap, always extending from the
//! neighbour with the clearest assignment. The two surfaces meet along
//! `δ₁ = −δ₂`, which separates two independently tracked halves; on each half
//! mode 1 is the one that is dark on the diagonal `δ₁ = δ₂`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::model::{build_effective_hamiltonian, ArrayConfig};

/// Permutation scores closer than this leave the labelling undecided.
const AMBIGUITY_MARGIN: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct DecayMap {
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    /// Decay rates of modes 1 and 2, row-major with `d2` fastest.
    pub values: Vec<[f64; 2]>,
    /// Cells where the two overlap assignments were nearly equal.
    pub ambiguous: Vec<bool>,
}

impl DecayMap {
    pub fn at(&self, i1: usize, i2: usize) -> [f64; 2] {
        self.values[i1 * self.d2.len() + i2]
    }

    pub fn is_ambiguous(&self, i1: usize, i2: usize) -> bool {
        self.ambiguous[i1 * self.d2.len() + i2]
    }
}

struct Cell {
    decay: [f64; 2],
    left: [CVector; 2],
    right: [CVector; 2],
}

pub fn subradiant_decay_map(
    n: usize,
    shift_atoms: (usize, usize),
    d1_grid: &[f64],
    d2_grid: &[f64],
    gamma: f64,
) -> Result<DecayMap> {
    if n < 3 {
        return Err(Error::argument("n", "decay map needs at least three atoms"));
    }
    let (a, b) = shift_atoms;
    if a == b {
        return Err(Error::argument("shift_atoms", "atoms must be distinct"));
    }
    for index in [a, b] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if d1_grid.is_empty() || d2_grid.is_empty() {
        return Err(Error::argument("grid", "must be non-empty"));
    }
    if d1_grid.iter().chain(d2_grid).any(|d| !d.is_finite()) {
        return Err(Error::argument("grid", "values must be finite"));
    }
    ArrayConfig::bragg(vec![0.0; n])?.with_gamma(gamma)?;

    let basis = block_basis(n, a, b);
    let n2 = d2_grid.len();
    let cells: Vec<Cell> = (0..d1_grid.len() * n2)
        .into_par_iter()
        .map(|idx| {
            let mut shifts = vec![0.0; n];
            shifts[a] = d1_grid[idx / n2];
            shifts[b] = d2_grid[idx % n2];
            let config = ArrayConfig::bragg(shifts)?.with_gamma(gamma)?;
            let h = build_effective_hamiltonian(&config);
            let block = basis.transpose() * h.matrix() * &basis;
            block_modes(&block)
        })
        .collect::<Result<_>>()?;

    let (values, ambiguous) = track(&cells, d1_grid, d2_grid);
    Ok(DecayMap { d1: d1_grid.to_vec(), d2: d2_grid.to_vec(), values, ambiguous })
}

/// Orthonormal real basis of the invariant block: `e_a`, `e_b` and the bright
/// combination of the unshifted atoms.
fn block_basis(n: usize, a: usize, b: usize) -> CMatrix {
    let rest = (n - 2) as f64;
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    CMatrix::from_fn(n, 3, |row, col| {
        let value = match col {
            0 => f64::from(u8::from(row == a)),
            1 => f64::from(u8::from(row == b)),
            _ if row == a || row == b => 0.0,
            _ => sign(row) / rest.sqrt(),
        };
        Complex64::new(value, 0.0)
    })
}

fn block_modes(block: &CMatrix) -> Result<Cell> {
    let raw = linalg::eigen(block)?;
    let mut order: Vec<usize> = (0..raw.values.len()).collect();
    order.sort_by(|&i, &j| (-raw.values[i].im).total_cmp(&(-raw.values[j].im)));
    let keep = [order[0], order[1]];
    Ok(Cell {
        decay: keep.map(|k| -raw.values[k].im),
        left: keep.map(|k| raw.left.row(k).transpose()),
        right: keep.map(|k| raw.right.column(k).into_owned()),
    })
}

fn overlap(left: &CVector, right: &CVector) -> f64 {
    left.dot(right).norm() / (left.norm() * right.norm())
}

/// Returns `(swap, margin)` for labelling `next` from the already labelled
/// `prev`.
fn assignment(prev: &Cell, prev_swap: bool, next: &Cell) -> (bool, f64) {
    let p = |k: usize| if prev_swap { 1 - k } else { k };
    let keep = overlap(&prev.left[p(0)], &next.right[0]) + overlap(&prev.left[p(1)], &next.right[1]);
    let swap = overlap(&prev.left[p(0)], &next.right[1]) + overlap(&prev.left[p(1)], &next.right[0]);
    (swap > keep, (keep - swap).abs())
}

fn track(cells: &[Cell], d1: &[f64], d2: &[f64]) -> (Vec<[f64; 2]>, Vec<bool>) {
    let (n1, n2) = (d1.len(), d2.len());
    let scale = d1.iter().chain(d2).fold(0.0f64, |m, d| m.max(d.abs()));
    let side = |idx: usize| {
        let sum = d1[idx / n2] + d2[idx % n2];
        if sum.abs() <= 1e-12 * scale {
            0
        } else if sum > 0.0 {
            1
        } else {
            -1
        }
    };
    let seed_of = |want: i32| {
        (0..cells.len()).filter(|&idx| side(idx) == want).min_by(|&x, &y| {
            let key = |idx: usize| {
                let (u, v) = (d1[idx / n2], d2[idx % n2]);
                ((u - v).abs(), -(u.abs() + v.abs()))
            };
            let (kx, ky) = (key(x), key(y));
            kx.0.total_cmp(&ky.0).then(kx.1.total_cmp(&ky.1)).then(x.cmp(&y))
        })
    };

    let neighbours = |idx: usize| {
        let (i, j) = (idx / n2, idx % n2);
        let mut out = Vec::with_capacity(8);
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                if (di, dj) != (0, 0) && (0..n1 as i64).contains(&a) && (0..n2 as i64).contains(&b) {
                    out.push(a as usize * n2 + b as usize);
                }
            }
        }
        out
    };

    // The two decay surfaces touch along δ₁ = −δ₂ and exchange labels there,
    // so each side is continued on its own from a seed on the diagonal.
    // Cells on the line take a label but do not pass it on.
    let mut swapped: Vec<Option<bool>> = vec![None; cells.len()];
    let mut ambiguous = vec![false; cells.len()];
    let mut heap = BinaryHeap::new();
    for seed in [seed_of(1), seed_of(-1)].into_iter().flatten() {
        let cell = &cells[seed];
        heap.push(Candidate { margin: f64::INFINITY, idx: seed, swap: cell.decay[0] > cell.decay[1] });
    }
    if heap.is_empty() {
        if let Some(seed) = seed_of(0) {
            let cell = &cells[seed];
            heap.push(Candidate { margin: f64::INFINITY, idx: seed, swap: cell.decay[0] > cell.decay[1] });
        }
    }
    while let Some(Candidate { margin, idx, swap }) = heap.pop() {
        if swapped[idx].is_some() {
            continue;
        }
        swapped[idx] = Some(swap);
        ambiguous[idx] = margin < AMBIGUITY_MARGIN;
        let here = side(idx);
        if here == 0 && seed_of(1).is_some() {
            continue;
        }
        for next in neighbours(idx) {
            if swapped[next].is_none() && (side(next) == here || side(next) == 0) {
                let (swap, margin) = assignment(&cells[idx], swap, &cells[next]);
                heap.push(Candidate { margin, idx: next, swap });
            }
        }
    }

    let values = cells
        .iter()
        .zip(&swapped)
        .map(|(cell, s)| {
            let [x, y] = cell.decay;
            if s.unwrap_or(false) {
                [y, x]
            } else {
                [x, y]
            }
        })
        .collect();
    (values, ambiguous)
}

struct Candidate {
    margin: f64,
    idx: usize,
    swap: bool,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.margin
            .total_cmp(&other.margin)
            .then(other.idx.cmp(&self.idx))
            .then(self.swap.cmp(&other.swap))
    }
}
