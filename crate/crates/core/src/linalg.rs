//! Dense complex linear algebra: LU solves and a biorthogonal eigensolver.
//!
//! Eigenvalues come from a complex Schur form `A = Q T Qᴴ`. Right eigenvectors
//! are obtained by back substitution on `T`, left eigenvectors as the rows of
//! the inverse of the right-eigenvector matrix, so `L R = I` holds by
//! construction whenever the eigenvector matrix is invertible.

use nalgebra::linalg::Schur;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigenvalues closer than this (relative to ‖A‖) are treated as one cluster
/// during back substitution.
const CLUSTER_TOL: f64 = 1e-10;
/// Below this normalized left/right overlap the matrix is considered defective.
const DEFECT_OVERLAP: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-10;

pub(crate) struct RawEigen {
    pub values: Vec<Complex64>,
    /// Unit-norm right eigenvectors, one per column.
    pub right: CMatrix,
    /// Left eigenvectors, one per row, normalized so that `left * right = I`.
    pub left: CMatrix,
    pub matrix_norm: f64,
}

pub(crate) fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn eigen(a: &CMatrix) -> Result<RawEigen> {
    let n = a.nrows();
    let norm = frobenius(a).max(f64::MIN_POSITIVE);
    let max_iter = 100 * n.max(10);
    let (q, t) = Schur::try_new(a.clone(), f64::EPSILON, max_iter)
        .ok_or(Error::ConvergenceFailure { iterations: max_iter })?
        .unpack();

    let cluster = CLUSTER_TOL * norm;
    let smin = f64::EPSILON * norm;
    let values: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();

    let mut right = CMatrix::zeros(n, n);
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        x.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        x[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let num: Complex64 = ((j + 1)..=k).map(|m| t[(j, m)] * x[m]).sum();
            let mut den = t[(j, j)] - values[k];
            if den.norm() <= cluster {
                // Semisimple cluster: the coupling must vanish; otherwise fall
                // through to a perturbed pivot and let the overlap test decide.
                if num.norm() <= cluster * x.iter().map(|z| z.norm()).fold(0.0, f64::max) {
                    x[j] = Complex64::new(0.0, 0.0);
                    continue;
                }
                if den.norm() < smin {
                    den = Complex64::new(smin, 0.0);
                }
            }
            x[j] = -num / den;
        }
        let xv = CVector::from_column_slice(&x);
        let mut col = &q * xv;
        let col_norm = col.norm();
        col /= Complex64::new(col_norm, 0.0);
        right.set_column(k, &col);
    }

    let left = right.clone().try_inverse().ok_or(Error::DefectiveMatrix {
        mode: 0,
        overlap: 0.0,
    })?;

    for k in 0..n {
        let left_norm = left.row(k).norm();
        let overlap = 1.0 / left_norm;
        if !overlap.is_finite() || overlap < DEFECT_OVERLAP {
            return Err(Error::DefectiveMatrix { mode: k, overlap });
        }
        let r = right.column(k);
        let residual = (a * r - r * values[k]).norm();
        let l = left.row(k);
        let left_residual = (l * a - l * values[k]).norm() / left_norm;
        if residual > RESIDUAL_TOL * norm || left_residual > RESIDUAL_TOL * norm {
            return Err(Error::DefectiveMatrix { mode: k, overlap });
        }
    }

    Ok(RawEigen { values, right, left, matrix_norm: norm })
}

/// Solves `a x = b` by partial-pivot LU, falling back to a minimum-norm SVD
/// solution when `a` is singular but `b` lies in its range. Returns the
/// solution and the residual norm `‖a x − b‖`.
pub(crate) fn solve(a: &CMatrix, b: &CVector) -> Option<(CVector, f64)> {
    let finite = |x: &CVector| x.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    let residual = |x: &CVector| (a * x - b).norm();
    let bound = 1e-10 * (frobenius(a) * b.norm()).max(b.norm());
    if let Some(x) = a.clone().lu().solve(b) {
        if finite(&x) {
            let res = residual(&x);
            if res <= bound {
                return Some((x, res));
            }
        }
    }
    let eps = 1e-12 * frobenius(a).max(f64::MIN_POSITIVE);
    let x = a.clone().svd(true, true).solve(b, eps).ok()?;
    if !finite(&x) {
        return None;
    }
    let res = residual(&x);
    Some((x, res))
}
