use std::fmt;

use crate::grid::Position;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Duplicate { i: i32, j: i32 },
    Touching { i: i32, j: i32 },
    MissingOrigin,
    Disconnected(Position),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate { i, j } => write!(f, "duplicate position: p_{i} = p_{j}"),
            Violation::Touching { i, j } => write!(f, "touching: p_{i} adjacent to p_{j}"),
            Violation::MissingOrigin => write!(f, "region does not contain the origin"),
            Violation::Disconnected(p) => write!(f, "region is disconnected at {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(Violation),
    #[error("position {0} is not in the configuration")]
    NotInConfig(Position),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget of {limit} configurations exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}
