use thiserror::Error;

/// Errors produced by domain construction, analysis and I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {message}")]
    Line { line: usize, message: String },

    #[error("unsupported format at line {line}: {message}")]
    UnsupportedFormat { line: usize, message: String },

    #[error("data error: {0}")]
    Data(String),

    #[error("invalid alternative set: {0}")]
    InvalidAlternatives(String),

    #[error("alternative sets differ: {0}")]
    MismatchedAlternatives(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{what} exceeds the supported limit ({limit}); {hint}")]
    Capability {
        what: String,
        limit: usize,
        hint: &'static str,
    },

    #[error("domain is not a Condorcet domain (triple {0:?} violates value restriction)")]
    NotCondorcet((u8, u8, u8)),

    #[error("domain is not maximal")]
    NotMaximal,

    #[error("domain is not unitary (ascending order missing)")]
    NotUnitary,

    #[error("domain is empty")]
    EmptyDomain,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn capability(what: impl Into<String>, limit: usize) -> Error {
    Error::Capability {
        what: what.into(),
        limit,
        hint: "pass the long-run flag to lift the limit where supported",
    }
}
