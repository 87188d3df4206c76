use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown bundle `{0}`")]
    UnknownBundle(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// A documented precondition of an operation was not met.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The input lies outside the class of graphs an operation handles.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not finitely presentable: {0}")]
    NotFinitelyPresentable(String),

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("count overflow while {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent routes to the same answer disagreed.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}
