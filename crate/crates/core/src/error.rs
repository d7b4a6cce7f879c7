use thiserror::Error;

/// Failure classes. Each maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    Input(String),
    /// An enumeration or field size exceeded its configured cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An internal consistency check failed.
    #[error("structural check failed: {0}")]
    Structural(String),
    /// Division by zero and similar.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn structural<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structural(msg.into()))
}
