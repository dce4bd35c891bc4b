//! Reference computations that share no code with the library.

#![allow(dead_code)]

use braggscat_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Polynomial coefficients, lowest order first.
type Poly = Vec<Complex64>;

fn poly_mul_linear(p: &Poly, root: Complex64) -> Poly {
    let mut out = vec![c(0.0, 0.0); p.len() + 1];
    for (k, &a) in p.iter().enumerate() {
        out[k + 1] += a;
        out[k] -= a * root;
    }
    out
}

fn poly_eval(p: &Poly, z: Complex64) -> (Complex64, Complex64) {
    let mut value = c(0.0, 0.0);
    let mut deriv = c(0.0, 0.0);
    for &a in p.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + a;
    }
    (value, deriv)
}

/// Roots of a polynomial by the Aberth–Ehrlich iteration.
pub fn poly_roots(p: &Poly) -> Vec<Complex64> {
    let degree = p.len() - 1;
    let lead = p[degree];
    let radius = 1.0 + p.iter().take(degree).map(|a| (a / lead).norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..degree {
            let (value, deriv) = poly_eval(p, z[k]);
            if value.norm() == 0.0 {
                continue;
            }
            let ratio = value / deriv;
            let repulsion: Complex64 = (0..degree).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

/// Eigenvalues of `diag(d) − iΓ v vᵀ` for a Bragg array, as roots of
/// `Π(E − d_j) + iΓ Σ_j Π_{k≠j}(E − d_k)`. `d_j` already includes any loss.
pub fn bragg_secular_roots(d: &[Complex64], gamma: f64) -> Vec<Complex64> {
    let mut full: Poly = vec![c(1.0, 0.0)];
    for &dj in d {
        full = poly_mul_linear(&full, dj);
    }
    let mut poly = full.clone();
    for j in 0..d.len() {
        let mut partial: Poly = vec![c(1.0, 0.0)];
        for (k, &dk) in d.iter().enumerate() {
            if k != j {
                partial = poly_mul_linear(&partial, dk);
            }
        }
        for (k, a) in partial.iter().enumerate() {
            poly[k] += c(0.0, gamma) * a;
        }
    }
    poly_roots(&poly)
}

/// Transmission and reflection of a Bragg array from the rank-one structure
/// of its Hamiltonian.
pub fn sherman_morrison(shifts: &[f64], gamma: f64, gamma_f: f64, delta_probe: f64) -> (Complex64, Complex64) {
    let s: Complex64 = shifts.iter().map(|&d| 1.0 / (c(delta_probe - d, 0.0) + c(0.0, gamma_f))).sum();
    let denom = 1.0 + c(0.0, gamma) * s;
    (1.0 / denom, -c(0.0, gamma) * s / denom)
}

/// Transmission and reflection from a product of 2×2 transfer matrices, with
/// positions in units of the resonant wavelength. Amplitudes are referred to
/// the first atom.
pub fn transfer_matrix(
    shifts: &[f64],
    positions: &[f64],
    gamma: f64,
    gamma_f: f64,
    delta_probe: f64,
) -> (Complex64, Complex64) {
    type M2 = [[Complex64; 2]; 2];
    let mul = |a: &M2, b: &M2| -> M2 {
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    };
    let atom = |shift: f64| -> M2 {
        let r = -c(0.0, gamma) / c(delta_probe - shift, gamma + gamma_f);
        let t = 1.0 + r;
        [[t - r * r / t, r / t], [-r / t, 1.0 / t]]
    };
    let mut m = atom(shifts[0]);
    for j in 1..shifts.len() {
        let phase = Complex64::from_polar(1.0, 2.0 * PI * (positions[j] - positions[j - 1]));
        let hop: M2 = [[phase, c(0.0, 0.0)], [c(0.0, 0.0), phase.conj()]];
        m = mul(&atom(shifts[j]), &mul(&hop, &m));
    }
    let length = positions[positions.len() - 1] - positions[0];
    let r = -m[1][0] / m[1][1];
    let t = Complex64::from_polar(1.0, -2.0 * PI * length) / m[1][1];
    (t, r)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct RandomScenario {
    pub shifts: Vec<f64>,
    pub positions: Vec<f64>,
    pub gamma: f64,
    pub gamma_f: f64,
}

/// Random array with up to `max_n` atoms, arbitrary spacings and shifts.
pub fn random_scenario(rng: &mut ChaCha8Rng, max_n: usize, lossy: bool) -> RandomScenario {
    let n = rng.random_range(1..=max_n);
    let mut x = 0.0;
    let positions = (0..n)
        .map(|j| {
            if j > 0 {
                x += rng.random_range(0.05..1.5);
            }
            x
        })
        .collect();
    let shifts = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
    let gamma = rng.random_range(0.2..2.0);
    let gamma_f = if lossy { rng.random_range(0.01..1.0) } else { 0.0 };
    RandomScenario { shifts, positions, gamma, gamma_f }
}
