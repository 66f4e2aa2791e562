//! Crate-wide error type.
//!
//! Numerical routines in this crate are total away from genuine analytic
//! obstructions (poles, divergent regions, non-hyperbolic matrices); the
//! variants below name those obstructions so callers can distinguish
//! "mathematically undefined here" from "parameters out of contract".

use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation at (or numerically indistinguishable from) a pole.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// Input outside the operation's domain of validity.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature cannot reach its accuracy target here.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Geodesic length requested for a matrix with |trace| <= 2.
    #[error("non-hyperbolic matrix: |trace| = {0} <= 2")]
    NonHyperbolic(f64),

    /// Fundamental-domain reduction failed to terminate; signals numerical
    /// degeneracy at extremely small imaginary part.
    #[error("fundamental-domain reduction exceeded the iteration limit")]
    IterationLimit,

    /// The collocation system could not be solved.
    #[error("singular collocation system: {0}")]
    SingularSystem(String),

    /// A coefficient index beyond the stored truncation was requested.
    #[error("coefficient a({0}) requested but truncation is {1}")]
    IndexOutOfRange(usize, usize),

    /// A persisted file carries an unknown or wrong schema header.
    #[error("schema mismatch: {0}")]
    Schema(String),

    /// Underlying I/O failure while reading or writing data files.
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
