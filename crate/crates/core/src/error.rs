use thiserror::Error;

/// Failure categories shared by every stage of the pipeline.
///
/// The CLI maps these onto its exit codes: input errors to 1, integrity
/// errors to 2 and resource errors to 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
