use thiserror::Error;

/// Failure classes, mirrored by the command-line exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("domain: {0}")]
    Domain(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Domain(_) => 2,
            Error::Mismatch(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
