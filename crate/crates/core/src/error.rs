use thiserror::Error;

/// Error type shared by the whole library.
///
/// Variants are grouped by how callers are expected to react: text that did
/// not parse, inputs that parsed but violate a precondition, resource caps,
/// and internal invariant violations (which indicate a bug, never bad input).
#[derive(Debug, Error)]
pub enum Error {
    #[error("group parse error: {0}")]
    GroupParse(String),

    #[error("trivial group: every cyclic factor is 1")]
    TrivialGroup,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
