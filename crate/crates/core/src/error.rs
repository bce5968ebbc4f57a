use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n = {n} exceeds the configured capacity of {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("pair {id}: {message}")]
    Invariant { id: String, message: String },

    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },

    #[error("table size mismatch: n = {left} vs n = {right}")]
    MismatchedN { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
