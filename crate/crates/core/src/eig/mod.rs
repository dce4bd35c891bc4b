//! Biorthogonal eigensystem of the effective Hamiltonian.
//!
//! `H = Σ_j E_j |ψ_j^R⟩⟨ψ_j^L|` with `⟨ψ_j^L|ψ_k^R⟩ = δ_jk`. Each mode carries
//! its transmission and reflection interaction spectra
//! `Ξ_j = V†|ψ_j^R⟩⟨ψ_j^L|V` and `Ξ̃_j = Vᵀ|ψ_j^R⟩⟨ψ_j^L|V`, which weight the
//! mode in the scattering sums.

mod closed_form;

pub use closed_form::{n_atom_single_shift_closed_form, two_atom_closed_form, ClosedFormPair};

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{self, CVector};
use crate::model::{probe_vector, EffectiveHamiltonian, ProbeVector};

/// Waveguide decay below `DARK_THRESHOLD · Γ` counts as dark.
pub const DARK_THRESHOLD: f64 = 1e-9;
/// Eigenvalue gap (units of Γ) under which a poorly conditioned pair is
/// treated as sitting next to an exceptional point.
pub const EP_GAP: f64 = 1e-6;
const EP_CONDITION: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeClass {
    Superradiant,
    Subradiant,
    Dark,
}

impl ModeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeClass::Superradiant => "superradiant",
            ModeClass::Subradiant => "subradiant",
            ModeClass::Dark => "dark",
        }
    }
}

impl std::fmt::Display for ModeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct EigenMode {
    pub energy: Complex64,
    /// Unit-norm right eigenvector.
    pub right: CVector,
    /// Left eigenvector stored as a column; `left.transpose() * right == 1`.
    pub left: CVector,
    pub xi: Complex64,
    pub xi_tilde: Complex64,
    pub class: ModeClass,
}

impl EigenMode {
    /// Total decay rate `−Im E`, including free-space loss.
    pub fn decay(&self) -> f64 {
        -self.energy.im
    }

    pub fn level(&self) -> f64 {
        self.energy.re
    }

    /// Eigenvalue condition number `‖ψ^L‖‖ψ^R‖ / |⟨ψ^L|ψ^R⟩|`.
    pub fn condition(&self) -> f64 {
        self.left.norm() * self.right.norm() / self.left.dot(&self.right).norm()
    }
}

#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub modes: Vec<EigenMode>,
    /// A nearly coalescing, poorly conditioned pair was found; modal sums are
    /// unreliable and the resolvent path must be used.
    pub ep_adjacent: bool,
    pub matrix_norm: f64,
}

impl Eigensystem {
    pub fn energies(&self) -> Vec<Complex64> {
        self.modes.iter().map(|m| m.energy).collect()
    }

    pub fn count(&self, class: ModeClass) -> usize {
        self.modes.iter().filter(|m| m.class == class).count()
    }

    pub fn superradiant(&self) -> Option<&EigenMode> {
        self.modes.iter().find(|m| m.class == ModeClass::Superradiant)
    }

    pub fn subradiant(&self) -> impl Iterator<Item = &EigenMode> {
        self.modes.iter().filter(|m| m.class == ModeClass::Subradiant)
    }
}

/// Diagonalizes `h`, fills interaction spectra from the scenario's probe
/// vector and classifies the modes.
///
/// Modes are sorted by descending decay rate, ties (within the dark
/// threshold) by ascending level. The largest-magnitude component of each
/// right vector is made real and positive.
pub fn eigendecompose(h: &EffectiveHamiltonian) -> Result<Eigensystem> {
    let raw = linalg::eigen(h.matrix())?;
    let n = raw.values.len();
    let config = h.config();

    let mut modes: Vec<EigenMode> = (0..n)
        .map(|k| {
            let mut right = raw.right.column(k).into_owned();
            let mut left = raw.left.row(k).transpose();
            let phase = phase_of_largest(&right);
            right *= phase.conj();
            left *= phase;
            EigenMode {
                energy: raw.values[k],
                right,
                left,
                xi: Complex64::new(0.0, 0.0),
                xi_tilde: Complex64::new(0.0, 0.0),
                class: ModeClass::Subradiant,
            }
        })
        .collect();

    let tie = DARK_THRESHOLD * config.gamma();
    modes.sort_by(|a, b| {
        let qa = (a.decay() / tie).round();
        let qb = (b.decay() / tie).round();
        qb.total_cmp(&qa).then(a.level().total_cmp(&b.level()))
    });

    interaction_spectra(&mut modes, &probe_vector(config));
    classify_modes(&mut modes, config.gamma(), config.gamma_f());

    let gap = EP_GAP * config.gamma();
    let mut ep_adjacent = false;
    for j in 0..n {
        for k in (j + 1)..n {
            let close = (modes[j].energy - modes[k].energy).norm() < gap;
            let ill = modes[j].condition().max(modes[k].condition()) > EP_CONDITION;
            ep_adjacent |= close && ill;
        }
    }

    Ok(Eigensystem { modes, ep_adjacent, matrix_norm: raw.matrix_norm })
}

fn phase_of_largest(v: &CVector) -> Complex64 {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pick = v
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-12))
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    if pick.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        pick / pick.norm()
    }
}

/// Fills `Ξ_j` and `Ξ̃_j` for every mode.
pub fn interaction_spectra(modes: &mut [EigenMode], v: &ProbeVector) {
    let v = v.as_vector();
    for mode in modes {
        let outgoing = mode.left.dot(v);
        mode.xi = v.dotc(&mode.right) * outgoing;
        mode.xi_tilde = v.dot(&mode.right) * outgoing;
    }
}

/// Labels modes from their waveguide decay `−Im E − Γ_f`: dark below
/// `DARK_THRESHOLD · Γ`, superradiant for the largest decay, subradiant
/// otherwise.
pub fn classify_modes(modes: &mut [EigenMode], gamma: f64, gamma_f: f64) {
    let waveguide = |m: &EigenMode| m.decay() - gamma_f;
    let max = modes.iter().map(waveguide).fold(f64::NEG_INFINITY, f64::max);
    let mut super_taken = false;
    for mode in modes.iter_mut() {
        let rate = waveguide(mode);
        mode.class = if rate < DARK_THRESHOLD * gamma {
            ModeClass::Dark
        } else if rate == max && !super_taken {
            super_taken = true;
            ModeClass::Superradiant
        } else {
            ModeClass::Subradiant
        };
    }
}
