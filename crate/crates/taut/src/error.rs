use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed request (bad flag value, unknown variable name, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// The reader of the output went away.
    #[error("output closed")]
    Closed,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
