//! Array scenarios, photon-mediated couplings and the effective Hamiltonian.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

/// Default nearest-neighbour spacing in units of the resonant wavelength.
pub const BRAGG_SPACING: f64 = 0.5;

const BRAGG_TOL: f64 = 1e-12;

/// A physical scenario: `n` two-level atoms along the waveguide.
///
/// Frequencies and rates are in units of the waveguide decay rate, positions
/// in units of the resonant wavelength. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    omega0: f64,
    gamma: f64,
    gamma_f: f64,
    shifts: Vec<f64>,
    positions: Vec<f64>,
}

impl ArrayConfig {
    pub fn new(
        omega0: f64,
        gamma: f64,
        gamma_f: f64,
        shifts: Vec<f64>,
        positions: Vec<f64>,
    ) -> Result<Self> {
        let config = ArrayConfig { omega0, gamma, gamma_f, shifts, positions };
        config.validate()?;
        Ok(config)
    }

    /// Exact Bragg array (spacing λ₀/2) with Γ = 1, Γ_f = 0, ω₀ = 0.
    pub fn bragg(shifts: Vec<f64>) -> Result<Self> {
        Self::with_spacing(shifts, BRAGG_SPACING)
    }

    /// Evenly spaced array with Γ = 1, Γ_f = 0, ω₀ = 0.
    pub fn with_spacing(shifts: Vec<f64>, spacing: f64) -> Result<Self> {
        let positions = (0..shifts.len()).map(|i| i as f64 * spacing).collect();
        Self::new(0.0, 1.0, 0.0, shifts, positions)
    }

    /// Homogeneous Bragg array of `n` atoms.
    pub fn homogeneous(n: usize) -> Result<Self> {
        Self::bragg(vec![0.0; n])
    }

    pub fn with_gamma_f(mut self, gamma_f: f64) -> Result<Self> {
        self.gamma_f = gamma_f;
        self.validate()?;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_omega0(mut self, omega0: f64) -> Result<Self> {
        self.omega0 = omega0;
        self.validate()?;
        Ok(self)
    }

    pub fn with_shifts(mut self, shifts: Vec<f64>) -> Result<Self> {
        self.shifts = shifts;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.shifts.len();
        if n == 0 {
            return Err(Error::config("n", "must be >= 1"));
        }
        if self.positions.len() != n {
            return Err(Error::config(
                "positions",
                format!("has length {} but n = {}", self.positions.len(), n),
            ));
        }
        if !self.omega0.is_finite() {
            return Err(Error::config("omega0", "must be finite"));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::config("gamma", "must be > 0"));
        }
        if !(self.gamma_f.is_finite() && self.gamma_f >= 0.0) {
            return Err(Error::config("gamma_f", "must be >= 0"));
        }
        if self.shifts.iter().any(|s| !s.is_finite()) {
            return Err(Error::config("shifts", "must be finite"));
        }
        if self.positions.iter().any(|x| !x.is_finite()) {
            return Err(Error::config("positions", "must be finite"));
        }
        if self.positions.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config("positions", "must be strictly increasing"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.shifts.len()
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gamma_f(&self) -> f64 {
        self.gamma_f
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// Every pair of atoms is separated by an integer number of half wavelengths.
    pub fn is_bragg(&self) -> bool {
        self.positions.windows(2).all(|w| {
            let halves = 2.0 * (w[1] - w[0]);
            (halves - halves.round()).abs() < BRAGG_TOL
        })
    }

    /// Non-Bragg spacing combined with frequency shifts: the literal coupling
    /// formulas are still applied, but the small-shift reasoning behind them
    /// has not been exercised for such arrays.
    pub fn outside_paper_regime(&self) -> bool {
        !self.is_bragg() && self.shifts.iter().any(|&s| s != 0.0)
    }
}

/// `(sin 2πx, cos 2πx)`, exact at multiples of a quarter turn.
pub(crate) fn sin_cos_turns(x: f64) -> (f64, f64) {
    let quarters = 4.0 * x;
    if quarters == quarters.round() && quarters.abs() < 2f64.powi(52) {
        return match (quarters as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    let reduced = x - x.round();
    (2.0 * PI * reduced).sin_cos()
}

/// Coherent and dissipative couplings `(g_ij, γ_ij)` between atoms `i` and `j`.
pub fn coupling_coefficients(config: &ArrayConfig, i: usize, j: usize) -> Result<(f64, f64)> {
    let n = config.n();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    let distance = (config.positions[i] - config.positions[j]).abs();
    let (sin, cos) = sin_cos_turns(distance);
    Ok((config.gamma * sin, config.gamma * cos))
}

/// Single-excitation effective Hamiltonian together with its scenario.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    matrix: CMatrix,
    config: ArrayConfig,
}

impl EffectiveHamiltonian {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn config(&self) -> &ArrayConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

pub fn build_effective_hamiltonian(config: &ArrayConfig) -> EffectiveHamiltonian {
    let n = config.n();
    let loss = config.gamma + config.gamma_f;
    let mut matrix = CMatrix::zeros(n, n);
    for i in 0..n {
        matrix[(i, i)] = Complex64::new(config.omega0 + config.shifts[i], -loss);
        for j in (i + 1)..n {
            let (sin, cos) = sin_cos_turns(config.positions[j] - config.positions[i]);
            let element = Complex64::new(config.gamma * sin, -config.gamma * cos);
            matrix[(i, j)] = element;
            matrix[(j, i)] = element;
        }
    }
    EffectiveHamiltonian { matrix, config: config.clone() }
}

/// Propagating-mode amplitudes at the atoms, with the phase of atom 0 fixed to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeVector(CVector);

impl ProbeVector {
    pub fn as_vector(&self) -> &CVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for ProbeVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

pub fn probe_vector(config: &ArrayConfig) -> ProbeVector {
    let origin = config.positions[0];
    ProbeVector(CVector::from_iterator(
        config.n(),
        config.positions.iter().map(|&x| {
            let (sin, cos) = sin_cos_turns(x - origin);
            Complex64::new(cos, sin)
        }),
    ))
}
