use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("point set over {universe} points used with a space of {point_count} points")]
    InvalidSet { universe: usize, point_count: usize },
    #[error("point {point} out of range (space has {point_count} points)")]
    PointOutOfRange { point: usize, point_count: usize },
    #[error("grid dimensions must be positive, got {width}x{height}")]
    ZeroDimension { width: usize, height: usize },
    #[error("distance threshold must be a finite non-negative number, got {0}")]
    InvalidDelta(f64),
    #[error("input of size {size} exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// A syntax or resolution error in formula or query text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("group search precondition violated: {0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle limited to {limit} points, model has {points}")]
    ModelTooLarge { points: usize, limit: usize },
    #[error("point set does not match the model's {0} points")]
    InvalidSet(usize),
}

#[derive(Debug, Error)]
pub enum ModelIoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("pixmap: {0}")]
    Pixmap(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl ModelIoError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        ModelIoError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ModelIoError::Syntax {
            line,
            message: message.into(),
        }
    }
}
