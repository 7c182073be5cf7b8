use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (bad dimensions, empty sets,
    /// unknown preset names, parse failures, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Structurally valid input that this implementation does not handle
    /// (non-diagonal maps in box images, non-grid-alignable cells, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A configured resource budget would be exceeded.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// A state the invariants rule out; reaching it is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
