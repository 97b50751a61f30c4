use thiserror::Error;

/// Errors shared across the permutation, series, quadrature and zeta layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or mismatched arguments (ground sets, sizes, parse failures).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tolerance cannot be met with the given truncation.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// Feature outside the supported range (field allowlist, dimension caps).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An integrand or coefficient evaluator failed.
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn accuracy(msg: impl Into<String>) -> Self {
        Error::Accuracy(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn eval(msg: impl Into<String>) -> Self {
        Error::Eval(msg.into())
    }
}
