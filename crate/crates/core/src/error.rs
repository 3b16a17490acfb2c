use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid population shape {clans}x{pods}x{individuals}: every level needs at least one member and the total must be at least 2")]
    InvalidShape {
        clans: usize,
        pods: usize,
        individuals: usize,
    },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("invalid position: {0}")]
    InvalidPosition(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cut points need at least 2 clans, got {0}")]
    TooFewClans(usize),
    #[error("invalid maze: {0}")]
    InvalidMaze(String),
    #[error("maze file line {line}, column {column}: {kind}")]
    Parse {
        line: usize,
        column: usize,
        kind: ParseErrorKind,
    },
    #[error("could not generate a {width}x{height} maze with {connectivity}% connectivity at density {density} after {attempts} attempts")]
    InfeasibleMaze {
        width: usize,
        height: usize,
        connectivity: f64,
        density: f64,
        attempts: usize,
    },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    NotRectangular { expected: usize, found: usize },
    IllegalCharacter(char),
    MissingEntrance,
    MissingExit,
    DuplicateEntrance,
    DuplicateExit,
    BadHeader(String),
    EmptyGrid,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::NotRectangular { expected, found } => {
                write!(f, "row has {found} cells, expected {expected}")
            }
            ParseErrorKind::IllegalCharacter(c) => write!(f, "illegal character {c:?}"),
            ParseErrorKind::MissingEntrance => f.write_str("no entrance 'S'"),
            ParseErrorKind::MissingExit => f.write_str("no exit 'E'"),
            ParseErrorKind::DuplicateEntrance => f.write_str("duplicate entrance 'S'"),
            ParseErrorKind::DuplicateExit => f.write_str("duplicate exit 'E'"),
            ParseErrorKind::BadHeader(line) => write!(f, "malformed header {line:?}"),
            ParseErrorKind::EmptyGrid => f.write_str("grid has no rows"),
        }
    }
}
