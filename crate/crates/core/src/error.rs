use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid config: {field} {message}")]
    InvalidConfig { field: &'static str, message: String },

    #[error("invalid argument `{name}`: {message}")]
    InvalidArgument { name: &'static str, message: String },

    #[error("atom index {index} out of range for an array of {n} atoms")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("Schur iteration did not converge within {iterations} sweeps")]
    ConvergenceFailure { iterations: usize },

    #[error("matrix is defective: biorthogonal overlap {overlap:e} for mode {mode}")]
    DefectiveMatrix { mode: usize, overlap: f64 },

    #[error("exceptional point at delta = {delta} (mu = 0)")]
    ExceptionalPoint { delta: f64 },

    #[error("resolvent solve failed at omega = {omega} (residual {residual:e})")]
    SingularSystem { omega: f64, residual: f64 },

    #[error("eigensystem is adjacent to an exceptional point; use the resolvent path")]
    EpUnreliable,

    #[error("no real absorption extrema for |delta| = {delta} >= 2 gamma = {two_gamma}")]
    NoRealExtrema { delta: f64, two_gamma: f64 },
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidConfig { .. } => "INVALID_CONFIG",
            Error::InvalidArgument { .. } => "INVALID_ARGUMENT",
            Error::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
            Error::ConvergenceFailure { .. } => "CONVERGENCE_FAILURE",
            Error::DefectiveMatrix { .. } => "DEFECTIVE_MATRIX",
            Error::ExceptionalPoint { .. } => "EXCEPTIONAL_POINT",
            Error::SingularSystem { .. } => "SINGULAR_SYSTEM",
            Error::EpUnreliable => "EP_UNRELIABLE",
            Error::NoRealExtrema { .. } => "NO_REAL_EXTREMA",
        }
    }

    /// True for errors caused by bad input rather than numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig { .. } | Error::InvalidArgument { .. } | Error::IndexOutOfRange { .. }
        )
    }

    pub(crate) fn config(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidConfig { field, message: message.into() }
    }

    pub(crate) fn argument(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidArgument { name, message: message.into() }
    }
}
