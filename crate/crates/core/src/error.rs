use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("wrong classification: expected {expected}, found {found}")]
    Classification { expected: String, found: String },
    #[error("unexpected dimension for {what}: expected {expected}, found {found}")]
    UnexpectedDimension {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("projection center hit: {0}")]
    CenterHit(String),
    #[error("seed search exhausted after {attempts} attempts: {reason}")]
    SeedRejected { attempts: u32, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
