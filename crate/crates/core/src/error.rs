use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A table or work buffer would exceed the configured memory budget.
    #[error("resource limit: {what} needs {requested} bytes, memory budget is {budget} bytes")]
    ResourceLimit {
        what: &'static str,
        requested: u64,
        budget: u64,
    },

    #[error("corrupt cache: {0}")]
    CorruptCache(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
