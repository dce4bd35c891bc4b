//! Transmission, reflection and absorption of a single monochromatic photon.
//!
//! The canonical path is the resolvent,
//! `t = 1 − iΓ V†(ω − H)⁻¹V` and `r = −iΓ Vᵀ(ω − H)⁻¹V`, which equals the
//! modal sums `1 − iΓ Σ_j Ξ_j/(ω − E_j)` and `−iΓ Σ_j Ξ̃_j/(ω − E_j)` but stays
//! well defined at exceptional points and in degenerate dark subspaces.

use num_complex::Complex64;

use crate::eig::{Eigensystem, ModeClass};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{build_effective_hamiltonian, probe_vector, ArrayConfig, EffectiveHamiltonian, ProbeVector};
use crate::numerics::central_derivative;

const SOLVE_RESIDUAL: f64 = 1e-8;
/// Step (units of Γ) for finite-difference stationarity checks.
pub const STATIONARITY_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub omega: f64,
    /// Probe detuning `Δ = ω − ω₀`.
    pub delta_probe: f64,
    pub t: Complex64,
    pub r: Complex64,
    pub transmission: f64,
    pub reflection: f64,
    pub eta: f64,
}

impl ScatteringResult {
    pub fn new(omega: f64, omega0: f64, t: Complex64, r: Complex64) -> Self {
        ScatteringResult {
            omega,
            delta_probe: omega - omega0,
            t,
            r,
            transmission: t.norm_sqr(),
            reflection: r.norm_sqr(),
            eta: absorption(t, r),
        }
    }
}

pub fn amplitudes_resolvent(
    h: &EffectiveHamiltonian,
    v: &ProbeVector,
    omega: f64,
) -> Result<(Complex64, Complex64)> {
    let n = h.dim();
    let system = CMatrix::from_diagonal_element(n, n, Complex64::new(omega, 0.0)) - h.matrix();
    let v = v.as_vector();
    let bound = SOLVE_RESIDUAL * v.norm();
    let (x, residual) = linalg::solve(&system, v)
        .ok_or(Error::SingularSystem { omega, residual: f64::INFINITY })?;
    if residual > bound {
        return Err(Error::SingularSystem { omega, residual });
    }
    let coupling = Complex64::new(0.0, h.config().gamma());
    let t = Complex64::new(1.0, 0.0) - coupling * v.dotc(&x);
    let r = -coupling * v.dot(&x);
    Ok((t, r))
}

pub fn scatter_resolvent(h: &EffectiveHamiltonian, v: &ProbeVector, omega: f64) -> Result<ScatteringResult> {
    let (t, r) = amplitudes_resolvent(h, v, omega)?;
    Ok(ScatteringResult::new(omega, h.config().omega0(), t, r))
}

/// A scenario prepared for repeated resolvent evaluations.
#[derive(Debug, Clone)]
pub struct ResolventModel {
    h: EffectiveHamiltonian,
    v: ProbeVector,
}

impl ResolventModel {
    pub fn new(config: &ArrayConfig) -> Self {
        ResolventModel { h: build_effective_hamiltonian(config), v: probe_vector(config) }
    }

    pub fn config(&self) -> &ArrayConfig {
        self.h.config()
    }

    pub fn hamiltonian(&self) -> &EffectiveHamiltonian {
        &self.h
    }

    pub fn probe(&self) -> &ProbeVector {
        &self.v
    }

    /// Scattering at probe detuning `Δ` from `ω₀`.
    pub fn at_detuning(&self, delta_probe: f64) -> Result<ScatteringResult> {
        scatter_resolvent(&self.h, &self.v, self.h.config().omega0() + delta_probe)
    }

    pub fn transmission(&self, delta_probe: f64) -> f64 {
        self.at_detuning(delta_probe).map(|s| s.transmission).unwrap_or(f64::NAN)
    }

    pub fn absorption(&self, delta_probe: f64) -> f64 {
        self.at_detuning(delta_probe).map(|s| s.eta).unwrap_or(f64::NAN)
    }
}

/// Direct evaluation of the modal sums.
pub fn amplitudes_modal(
    system: &Eigensystem,
    omega: f64,
    gamma: f64,
) -> Result<(Complex64, Complex64)> {
    if system.ep_adjacent {
        return Err(Error::EpUnreliable);
    }
    let coupling = Complex64::new(0.0, gamma);
    let mut t = Complex64::new(1.0, 0.0);
    let mut r = Complex64::new(0.0, 0.0);
    for mode in &system.modes {
        // Dark modes carry Ξ = 0 up to rounding; skipping them keeps probes
        // sitting on a dark level finite.
        if mode.class == ModeClass::Dark {
            continue;
        }
        let pole = Complex64::new(omega, 0.0) - mode.energy;
        t -= coupling * mode.xi / pole;
        r -= coupling * mode.xi_tilde / pole;
    }
    Ok((t, r))
}

fn removable(num: Complex64, den: Complex64) -> Complex64 {
    if den == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        num / den
    }
}

/// Two-atom transmission `Δ(Δ−δ) / (Δ(Δ−δ) + iΓ(2Δ−δ))`, lossless.
pub fn transmission_two_atom(delta_probe: f64, delta: f64, gamma: f64) -> Complex64 {
    transmission_n_atom(delta_probe, delta, gamma, 2)
}

/// `n`-atom Bragg transmission with one shifted atom,
/// `Δ(Δ−δ) / (Δ(Δ−δ) + iΓ(nΔ − (n−1)δ))`, lossless. Unit transmission at
/// `Δ = (1 − 1/n)δ`.
pub fn transmission_n_atom(delta_probe: f64, delta: f64, gamma: f64, n: usize) -> Complex64 {
    let nf = n as f64;
    let num = Complex64::new(delta_probe * (delta_probe - delta), 0.0);
    let den = num + Complex64::new(0.0, gamma * (nf * delta_probe - (nf - 1.0) * delta));
    removable(num, den)
}

pub fn absorption(t: Complex64, r: Complex64) -> f64 {
    1.0 - t.norm_sqr() - r.norm_sqr()
}

/// Two-atom absorption at the transparency probe `Δ = δ/2`:
/// `16ΓΓ_f(4Γ_f² + δ²) / (4Γ_f² + 8ΓΓ_f + δ²)²`.
pub fn absorption_resonance_two_atom(gamma: f64, gamma_f: f64, delta: f64) -> f64 {
    let a = 4.0 * gamma_f * gamma_f + delta * delta;
    let d = a + 8.0 * gamma * gamma_f;
    if d == 0.0 {
        return 0.0;
    }
    16.0 * gamma * gamma_f * a / (d * d)
}

/// Free-space loss values at which the two-atom resonant absorption is stationary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionExtrema {
    pub gamma: f64,
    pub delta: f64,
    /// Loss matching the subradiant decay; absorption 1/2.
    pub case_i: f64,
    /// Loss `|δ|/2`; local minimum.
    pub case_ii: f64,
    /// Loss matching the superradiant decay; absorption 1/2.
    pub case_iii: f64,
}

impl AbsorptionExtrema {
    pub fn values(&self) -> [f64; 3] {
        [self.case_i, self.case_ii, self.case_iii]
    }

    pub fn etas(&self) -> [f64; 3] {
        self.values().map(|gf| absorption_resonance_two_atom(self.gamma, gf, self.delta))
    }

    /// `dη/dΓ_f` at each extremum by central differences with step
    /// [`STATIONARITY_STEP`]·Γ.
    pub fn stationarity_residuals(&self) -> [f64; 3] {
        let (gamma, delta) = (self.gamma, self.delta);
        self.values().map(|gf| {
            central_derivative(
                |x| absorption_resonance_two_atom(gamma, x, delta),
                gf,
                STATIONARITY_STEP * gamma,
            )
        })
    }
}

pub fn absorption_extrema(gamma: f64, delta: f64) -> Result<AbsorptionExtrema> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::argument("gamma", "must be > 0"));
    }
    if !delta.is_finite() || delta.abs() >= 2.0 * gamma {
        return Err(Error::NoRealExtrema { delta: delta.abs(), two_gamma: 2.0 * gamma });
    }
    let root = (4.0 * gamma * gamma - delta * delta).sqrt() / 2.0;
    Ok(AbsorptionExtrema {
        gamma,
        delta,
        case_i: gamma - root,
        case_ii: delta.abs() / 2.0,
        case_iii: gamma + root,
    })
}
