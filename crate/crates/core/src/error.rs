use thiserror::Error;

use crate::structure::SubsetMask;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classification used by front-ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    ResourceCap,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("component index {index} out of range 1..={n}")]
    ComponentOutOfRange { index: usize, n: usize },

    #[error("path set #{position} is empty")]
    EmptyPathSet { position: usize },

    #[error("system has no path sets")]
    NoPathSets,

    #[error("structure function is 1 on the empty set")]
    EmptySetIsPathSet,

    #[error("structure function is 0 on the full component set")]
    FullSetNotPathSet,

    #[error("structure function is not monotone: phi({lower}) = 1 but phi({upper}) = 0")]
    NotMonotone {
        lower: SubsetMask,
        upper: SubsetMask,
    },

    #[error("{what} has size {n}, which exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("polynomial of degree {degree} cannot be reflected with respect to degree {n}")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("dimension mismatch: expected n = {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("relative quality level {level} sums to {sum}, expected 1")]
    LevelSum { level: usize, sum: String },

    #[error("relative quality is negative on {0}")]
    NegativeQuality(SubsetMask),

    #[error("invalid order distribution: {0}")]
    OrderDistribution(String),

    #[error("expected a {expected} vector, got a {found} vector")]
    RoleMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("route `{route}` is not available for {from} -> {to}")]
    RouteUnavailable {
        route: &'static str,
        from: &'static str,
        to: &'static str,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::Document(_) => ErrorKind::Parse,
            Error::SizeCap { .. } => ErrorKind::ResourceCap,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        if err.is_syntax() || err.is_eof() {
            Error::Syntax {
                line: err.line(),
                column: err.column(),
                message: err.to_string(),
            }
        } else {
            Error::Document(err.to_string())
        }
    }
}
