use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient sequence is empty")]
    EmptyCoefficients,
    #[error("all coefficients are zero; the zero polynomial is not representable")]
    ZeroPolynomial,
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("derivative order exceeds degree ({order} > {degree})")]
    DerivativeOrder { order: usize, degree: usize },
    #[error("root list is empty")]
    EmptyRoots,
    #[error("node vector is empty")]
    EmptyNodes,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("operation requires degree >= {required}, got {degree}")]
    DegreeTooLow { degree: usize, required: usize },
    #[error("root finder did not converge after {iterations} iterations (worst residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        best: Vec<Complex64>,
        residual: f64,
    },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("assignment count {count} exceeds enumeration cap {cap}")]
    EnumerationCap { count: u128, cap: u128 },
    #[error("invalid tolerance profile: {0}")]
    InvalidTolerance(&'static str),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}
