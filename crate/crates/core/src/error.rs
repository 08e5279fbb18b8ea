use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator tables differ")]
    TableMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("image of `{name}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        name: String,
        expected: u32,
        found: u32,
    },
    #[error("image of `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("degree index {requested} exceeds truncation {truncation}")]
    Truncation { requested: usize, truncation: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
