use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tau = {tau} is outside the supported domain (need finite tau with Im tau >= {min_im})")]
    Domain { tau: Complex64, min_im: f64 },

    #[error("theta series did not converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("{point} lies on the period lattice (pole)")]
    Pole { point: Complex64 },

    #[error("divisor supports overlap near {point}")]
    Overlap { point: Complex64 },

    #[error("divisor has degree {degree}; linking needs degree 0")]
    Homology { degree: i64 },

    #[error("divisors live on different curves")]
    CurveMismatch,

    #[error("map not supported: {0}")]
    Capability(String),

    #[error("{point} is a branch value of the map; multiplicity-one pullback is undefined")]
    Branch { point: Complex64 },

    #[error("value diverges: {0}")]
    Divergence(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
