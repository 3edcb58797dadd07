use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("insufficient sample size: need at least {required}, got {actual}")]
    InsufficientSamples { required: usize, actual: usize },
    #[error("numerical overflow: {0}")]
    Overflow(String),
    #[error("quadrature missed tolerance: error estimate {error:e} exceeds {tolerance:e}")]
    Quadrature { error: f64, tolerance: f64 },
    #[error("degenerate regression grid: {0}")]
    DegenerateGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
