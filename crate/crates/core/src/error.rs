use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid person: {0}")]
    InvalidPerson(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("validation error: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("internal error: {0}")]
    Internal(String),
}
