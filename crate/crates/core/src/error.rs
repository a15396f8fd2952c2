use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed user data: bad syntax, unknown names, inhomogeneous input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("resolution cutoff {cutoff} exceeded before homological degree {needed}")]
    CutoffExceeded { cutoff: usize, needed: usize },
    #[error("not an ideal of definition: H_{index} has dimension {dim}")]
    NotIdealOfDefinition { index: usize, dim: i64 },
    #[error("map does not commute with differentials at slot {0}")]
    NotChainMap(i32),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl Error {
    /// Whether the error stems from the caller's data rather than the computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::Parse { .. } | Error::NotHomogeneous(_)
        )
    }
}
