use thiserror::Error;

/// Errors produced by lattice construction, synthesis, bounds and verification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("instance has {size} vertices, exceeding the limit of {limit}")]
    SizeExceeded { size: usize, limit: usize },

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("malformed network: {0}")]
    MalformedNetwork(String),

    #[error("construction infeasible: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn check_size(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::SizeExceeded { size, limit })
    } else {
        Ok(())
    }
}
