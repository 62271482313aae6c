use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A documented precondition of an operation was not met.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A request would materialize or stream more digits than allowed.
    #[error("resource limit: {what} requires {requested} digits but the cap is {cap}")]
    Resource {
        what: String,
        requested: String,
        cap: u64,
    },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Text input could not be parsed; `position` is a 0-based byte offset.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
