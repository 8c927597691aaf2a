use thiserror::Error;

use crate::term_algebra::Position;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `position` does not address a subterm; `prefix` is the longest valid prefix
    /// followed by the first selector that fails.
    #[error("invalid position {position}: no subterm at {prefix}")]
    InvalidPosition {
        position: Position,
        prefix: Position,
    },

    #[error("rule index {index} out of range (system has {len} rules)")]
    RuleIndex { index: usize, len: usize },

    #[error("length mismatch: {what} ({left} vs {right})")]
    LengthMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("positions {0} and {1} are not parallel")]
    NotParallel(Position, Position),

    #[error(
        "step index {index}: subterm at {position} is not an instance of the lhs of rule {rule}"
    )]
    Coordination {
        index: usize,
        position: Position,
        rule: usize,
    },

    #[error("ill-formed rule: {0}")]
    IllFormedRule(String),

    #[error("ill-formed term: {0}")]
    IllFormedTerm(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("empty carrier")]
    EmptyCarrier,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
