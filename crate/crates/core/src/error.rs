use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input or parameters outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input is well formed but the operation is not defined for it.
    #[error("unsupported case: {0}")]
    Unsupported(String),
    /// A cross-check between two independent computations failed.
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
