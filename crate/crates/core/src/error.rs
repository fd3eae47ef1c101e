use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be positive, got {0}")]
    InvalidDegree(u32),
    #[error("field F_(p^(5e)) with p = {p}, e = {e} exceeds the table budget")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("element {value} out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element {0} does not lie in F_q")]
    NotInSubfield(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
