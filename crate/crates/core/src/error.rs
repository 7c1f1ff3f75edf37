use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input geometry failed validation.
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    /// A root bracket that must exist by construction was not found.
    #[error("internal error: {0}")]
    Internal(String),

    /// The annulus scan found no sign change of the characteristic determinant.
    #[error("no root found for k in (0, {scan_max}]")]
    NoRootFound { scan_max: f64 },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge on [{a}, {b}] (estimate {estimate}, error {error})")]
    Quadrature { a: f64, b: f64, estimate: f64, error: f64 },

    /// A symmetric factorization met a zero or non-finite pivot.
    #[error("factorization breakdown at pivot {pivot} (shift {shift})")]
    Factorization { pivot: usize, shift: f64 },

    /// Generic numerical failure with context.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Reading or parsing an input document failed.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
