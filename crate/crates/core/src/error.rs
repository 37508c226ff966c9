use thiserror::Error;

/// Errors surfaced by loading, solving and rounding.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex id {id} out of range for a graph with {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("capacity arithmetic overflow")]
    Overflow,

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
