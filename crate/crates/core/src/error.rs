use thiserror::Error;

#[derive(Debug, Error)]
pub enum CloverError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("leg {0} carries a multi-color label; expand the graph first")]
    MultiColorLeg(usize),

    #[error("invalid model ({invariant}): {detail}")]
    InvalidModel {
        invariant: &'static str,
        detail: String,
    },

    #[error("unknown color `{0}`")]
    UnknownColor(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("invalid relation selection: {0}")]
    InvalidSelection(String),

    #[error("vector is not nullhomologous: {0}")]
    NotNullhomologous(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CloverError>;

impl CloverError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CloverError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn model(invariant: &'static str, detail: impl Into<String>) -> Self {
        CloverError::InvalidModel {
            invariant,
            detail: detail.into(),
        }
    }
}
