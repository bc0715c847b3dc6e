use std::fmt;

use thiserror::Error;

/// Position-carrying syntax or semantic error from the text front-end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

// Not `#[from]`: the position is already in the message, so no source chain.
impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(ParseError),

    #[error("sort error: {0}")]
    Sort(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error("solver answered unknown for query {0}")]
    Unknown(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unsupported fragment: {0}")]
    Fragment(String),

    #[error("lattice violation: {0}")]
    Lattice(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("literal index {index} out of range for a table of {len} literals")]
    LiteralIndex { index: usize, len: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Sort(_) => 2,
            Error::Solver(_) | Error::Unknown(_) => 3,
            Error::Capacity(_) | Error::Fragment(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
