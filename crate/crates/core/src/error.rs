use thiserror::Error;

use crate::poly::Vars;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element {element} is not in the group {group}")]
    NotInGroup { element: String, group: String },

    #[error("invalid voltage assignment: {0}")]
    InvalidVoltage(String),

    #[error("invalid fiber: {0}")]
    InvalidFiber(String),

    #[error("polynomial variables differ: {0} vs {1}")]
    VariableMismatch(Vars, Vars),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An identity that holds mathematically failed; always a bug.
    #[error("identity violation: {0}")]
    IdentityViolation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
