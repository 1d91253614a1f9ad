//! Error type shared by every module.

use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An exact computation produced a value that must not occur, such as a
    /// non-integral class number.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// A decision procedure reached its precision or search cap.
    #[error("undecided: {0}")]
    Undecided(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InternalInconsistency(msg.into()))
}
