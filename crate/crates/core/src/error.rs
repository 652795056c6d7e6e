use thiserror::Error;

/// Every failure a toolkit operation can report.
///
/// The variants mirror the broad classes callers need to tell apart: bad
/// input words or arguments, machines or grammars of the wrong shape for an
/// operation, malformed text, and searches that ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("divergence: {0}")]
    Divergence(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_data() {
            // Shape mismatches against the schema are validation failures.
            Error::Validation(e.to_string())
        } else {
            Error::Json {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
