use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// The variants line up with the command-line exit codes: domain and
/// contract errors exit with 1, parse errors with 2, resource errors with 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A caller broke a documented precondition (e.g. passed a non-minimal recurrence).
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured capacity (sieve size, scan cap, exact-evaluation cap) would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
