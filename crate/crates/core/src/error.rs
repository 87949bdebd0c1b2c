use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
