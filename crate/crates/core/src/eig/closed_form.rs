//! Closed-form collective eigenpairs for Bragg arrays with a single shifted atom.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CVector;

/// `||δ| − 2Γ| < EP_TOL · Γ` is treated as the two-atom exceptional point.
pub const EP_TOL: f64 = 1e-12;

/// The two non-dark collective modes: index 1 is the subradiant member,
/// index 2 the superradiant one. Energies include `ω₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormPair {
    pub n: usize,
    pub e1: Complex64,
    pub e2: Complex64,
    pub mu: Complex64,
    pub xi1: Complex64,
    pub xi2: Complex64,
    /// Normalization factors `𝒩₁, 𝒩₂` with `ψᵀψ = 1` for the right vectors.
    pub norm1: Complex64,
    pub norm2: Complex64,
    /// First components `α₁, α₂` of the unnormalized right vectors
    /// `(α_k, 1, −1, …)`; `None` for two atoms, which use `((δ±μ)/2Γ, i)`.
    pub alpha: Option<(Complex64, Complex64)>,
    delta: f64,
    gamma: f64,
}

impl ClosedFormPair {
    /// Right eigenvector of mode `k ∈ {1, 2}` with `ψᵀψ = 1`, written in the
    /// basis of the effective Hamiltonian. Left vectors are its transpose.
    pub fn right_vector(&self, k: usize) -> CVector {
        assert!(k == 1 || k == 2, "mode index must be 1 or 2");
        let i = Complex64::i();
        let norm = if k == 1 { self.norm1 } else { self.norm2 };
        match self.alpha {
            None => {
                let sign = if k == 1 { 1.0 } else { -1.0 };
                let a = (self.delta + sign * self.mu) / (2.0 * self.gamma);
                let scale = -i / norm.sqrt();
                CVector::from_column_slice(&[a * scale, i * scale])
            }
            Some((a1, a2)) => {
                let alpha = if k == 1 { a1 } else { a2 };
                let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
                let scale = sign / norm.sqrt();
                CVector::from_iterator(
                    self.n,
                    std::iter::once(alpha).chain((0..self.n - 1).map(|j| {
                        Complex64::new(if j % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
                    }))
                    .map(|z| z * scale),
                )
            }
        }
    }
}

/// Two atoms at Bragg spacing, the first shifted by `delta`, no free-space loss.
///
/// `μ = i√(4Γ² − δ²)` below the exceptional point and `sign(δ)√(δ² − 4Γ²)`
/// above it, so mode 1 is always the long-lived member.
pub fn two_atom_closed_form(omega0: f64, delta: f64, gamma: f64) -> Result<ClosedFormPair> {
    check_gamma(gamma)?;
    if ((delta.abs() - 2.0 * gamma) / gamma).abs() < EP_TOL {
        return Err(Error::ExceptionalPoint { delta });
    }
    let i = Complex64::i();
    let disc = delta * delta - 4.0 * gamma * gamma;
    let mu = if disc < 0.0 {
        Complex64::new(0.0, (-disc).sqrt())
    } else {
        Complex64::new(delta.signum() * disc.sqrt(), 0.0)
    };
    let base = Complex64::new(omega0, -gamma);
    Ok(ClosedFormPair {
        n: 2,
        e1: base + (delta + mu) / 2.0,
        e2: base + (delta - mu) / 2.0,
        mu,
        xi1: (mu - 2.0 * i * gamma) / mu,
        xi2: (mu + 2.0 * i * gamma) / mu,
        norm1: 2.0 * mu / (mu - delta),
        norm2: 2.0 * mu / (mu + delta),
        alpha: None,
        delta,
        gamma,
    })
}

/// `n` atoms at Bragg spacing with only the first shifted by `delta`.
///
/// Uses the branch `Im μ ≥ 0`; `n = 2` delegates to [`two_atom_closed_form`].
pub fn n_atom_single_shift_closed_form(
    n: usize,
    omega0: f64,
    delta: f64,
    gamma: f64,
) -> Result<ClosedFormPair> {
    if n < 2 {
        return Err(Error::argument("n", "closed form needs at least two atoms"));
    }
    if n == 2 {
        return two_atom_closed_form(omega0, delta, gamma);
    }
    check_gamma(gamma)?;
    let i = Complex64::i();
    let nf = n as f64;
    let mu_sq = Complex64::new(
        delta * delta - nf * nf * gamma * gamma,
        2.0 * (nf - 2.0) * gamma * delta,
    );
    let mut mu = mu_sq.sqrt();
    if mu.im < 0.0 {
        mu = -mu;
    }
    let centre = Complex64::new(omega0 + delta / 2.0, 0.0);
    let alpha = |k: i32| {
        let sign = if k == 1 { -1.0 } else { 1.0 };
        ((nf - 2.0) * gamma - i * delta + sign * i * mu) / (2.0 * gamma)
    };
    let norm = |k: i32| {
        let sign = if k == 1 { -1.0 } else { 1.0 };
        2.0 * (nf - 1.0) * mu / (mu + sign * delta + sign * i * (nf - 2.0) * gamma)
    };
    Ok(ClosedFormPair {
        n,
        e1: centre - (i * nf * gamma - mu) / 2.0,
        e2: centre - (i * nf * gamma + mu) / 2.0,
        mu,
        xi1: (mu * nf - (nf - 2.0) * delta - i * nf * nf * gamma) / (2.0 * mu),
        xi2: (mu * nf + (nf - 2.0) * delta + i * nf * nf * gamma) / (2.0 * mu),
        norm1: norm(1),
        norm2: norm(2),
        alpha: Some((alpha(1), alpha(2))),
        delta,
        gamma,
    })
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::argument("gamma", "must be > 0"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_effective_hamiltonian, ArrayConfig};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_atom_unshifted() {
        let pair = two_atom_closed_form(0.0, 0.0, 1.0).unwrap();
        assert!((pair.e1 - c(0.0, 0.0)).norm() < 1e-15);
        assert!((pair.e2 - c(0.0, -2.0)).norm() < 1e-15);
        assert!(pair.xi1.norm() < 1e-15);
        assert!((pair.xi2 - 2.0).norm() < 1e-15);
    }

    #[test]
    fn two_atom_exceptional_points() {
        for delta in [2.0, -2.0, 2.0 + 5e-13, 2.0 - 5e-13] {
            assert_eq!(
                two_atom_closed_form(0.0, delta, 1.0).unwrap_err().code(),
                "EXCEPTIONAL_POINT"
            );
        }
        assert!(two_atom_closed_form(0.0, 2.0 + 1e-9, 1.0).is_ok());
    }

    #[test]
    fn two_atom_beyond_exceptional_point() {
        let pair = two_atom_closed_form(0.0, 3.0, 1.0).unwrap();
        assert!((pair.e1.re - pair.e2.re - 5f64.sqrt()).abs() < 1e-14);
        assert!((pair.e1.im + 1.0).abs() < 1e-15);
        assert!((pair.e2.im + 1.0).abs() < 1e-15);
    }

    #[test]
    fn n_atom_unshifted_limit() {
        let pair = n_atom_single_shift_closed_form(10, 0.0, 0.0, 1.0).unwrap();
        assert!(pair.e1.norm() < 1e-14);
        assert!((pair.e2 - c(0.0, -10.0)).norm() < 1e-14);
        assert!(pair.xi1.norm() < 1e-14);
        assert!((pair.xi2 - 10.0).norm() < 1e-14);
    }

    #[test]
    fn n_atom_formula_reduces_to_two_atom_formula() {
        // Evaluate the general-N expressions at N = 2 directly.
        for delta in [-1.5, -0.3, 0.1, 0.7, 1.9] {
            let two = two_atom_closed_form(0.0, delta, 1.0).unwrap();
            let mu = c(delta * delta - 4.0, 0.0).sqrt();
            let mu = if mu.im < 0.0 { -mu } else { mu };
            let e1 = c(delta / 2.0, 0.0) - (c(0.0, 2.0) - mu) / 2.0;
            let xi1 = (mu * 2.0 - c(0.0, 4.0)) / (2.0 * mu);
            assert!((e1 - two.e1).norm() < 1e-14);
            assert!((xi1 - two.xi1).norm() < 1e-14);
        }
    }

    #[test]
    fn closed_form_vectors_are_eigenvectors() {
        for (n, delta) in [(2usize, 0.4), (2, -1.2), (3, 1.0), (4, 0.3), (7, -0.8)] {
            let mut shifts = vec![0.0; n];
            shifts[0] = delta;
            let h = build_effective_hamiltonian(&ArrayConfig::bragg(shifts).unwrap());
            let pair = n_atom_single_shift_closed_form(n, 0.0, delta, 1.0).unwrap();
            for (k, e) in [(1, pair.e1), (2, pair.e2)] {
                let r = pair.right_vector(k);
                assert!((h.matrix() * &r - &r * e).norm() < 1e-12, "n={n} k={k}");
                assert!((r.dot(&r) - 1.0).norm() < 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(n_atom_single_shift_closed_form(1, 0.0, 0.1, 1.0).is_err());
        assert!(two_atom_closed_form(0.0, 0.1, 0.0).is_err());
    }
}
