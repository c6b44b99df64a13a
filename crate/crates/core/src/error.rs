use thiserror::Error;

/// Every failure the toolkit reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SkcError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: m = {m} exceeds the 20-terminal limit")]
    TooManyTerminals { m: usize, line: usize },

    #[error("line {line}: pmf mass {mass} ≠ 1")]
    PmfMass { mass: f64, line: usize },

    #[error("line {line}: empty hyperedge")]
    EmptyHyperedge { line: usize },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("{0}")]
    TooLarge(String),

    #[error("source is not Type S (margin {margin})")]
    NotTypeS { margin: String },

    #[error("graph not connected")]
    NotConnected,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, SkcError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(SkcError::Domain(msg.into()))
}
