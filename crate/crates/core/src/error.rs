use thiserror::Error;

/// Failure modes of the spectral routines. Numeric payloads are carried as `f64`
/// regardless of the scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("series did not converge within {terms} terms (tail estimate {tail:e})")]
    SeriesCap { terms: usize, tail: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("spectral parameter {z} is within {distance:e} of the eigenvalue {eigenvalue}")]
    NearEigenvalue { z: f64, eigenvalue: f64, distance: f64 },

    #[error("normalization expression is not positive ({value:e})")]
    NonPositiveNorm { value: f64 },

    #[error("extension lies outside the Lambda chart (condition number {condition:e})")]
    OutsideChart { condition: f64 },

    #[error("ill-conditioned matrix (condition number {condition:e})")]
    Conditioning { condition: f64 },

    #[error("parameter determinant xi*eta - zeta^2 vanishes ({det:e})")]
    DeterminantZero { det: f64 },

    #[error("interval {interval}: table predicts {predicted} roots, scan found {found}")]
    CountMismatch { interval: String, predicted: u32, found: u32 },

    #[error("boundary matrix has trivial kernel at lambda = {lambda} (residual {residual:e})")]
    NotARoot { lambda: f64, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
