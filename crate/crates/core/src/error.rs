use thiserror::Error;

/// Errors raised by the exact kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not an x-polynomial")]
    NotXPolynomial,

    #[error("not a polynomial in {0}")]
    NotPolynomial(&'static str),

    #[error("variable dependence violated: {0}")]
    VariableDependence(String),

    #[error("invalid nilpotent data: {0}")]
    InvalidNilpotent(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("theta is not in the eigenvalue algebra")]
    NotInGamma,

    #[error("degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("wave function matrix must be nonzero")]
    ZeroWaveFunction,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
