use thiserror::Error;

/// Errors produced by automaton construction, predicate compilation and
/// the counting machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),

    #[error("state cap of {limit} exceeded while building {context}")]
    StateCap { limit: usize, context: String },

    #[error("count diverges: {0}")]
    DivergentCount(String),

    #[error("malformed text format: {0}")]
    TextFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
