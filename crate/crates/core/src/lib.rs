//! Single-photon transport through a one-dimensional waveguide coupled to an
//! array of two-level atoms.
//!
//! The crate builds the non-Hermitian single-excitation Hamiltonian of the
//! array ([`model`]), diagonalizes it into a biorthogonal eigensystem with
//! interaction spectra ([`eig`]), evaluates transmission, reflection and
//! absorption ([`scatter`]) and runs the sweeps and searches used to locate
//! transparency windows, subradiant decay maps and absorption operating
//! points ([`analysis`]).
//!
//! All frequencies and rates are expressed in units of the waveguide-induced
//! single-atom decay rate; positions are in units of the resonant wavelength.

pub mod analysis;
pub mod eig;
mod error;
mod linalg;
pub mod model;
pub mod numerics;
pub mod scatter;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use num_complex::Complex64;

pub use eig::{
    classify_modes, eigendecompose, interaction_spectra, n_atom_single_shift_closed_form,
    two_atom_closed_form, ClosedFormPair, EigenMode, Eigensystem, ModeClass,
};
pub use model::{build_effective_hamiltonian, coupling_coefficients, probe_vector};
pub use model::{ArrayConfig, EffectiveHamiltonian, ProbeVector};
pub use scatter::{
    absorption, absorption_extrema, absorption_resonance_two_atom, amplitudes_modal,
    amplitudes_resolvent, scatter_resolvent, transmission_n_atom, transmission_two_atom,
    AbsorptionExtrema, ScatteringResult,
};
