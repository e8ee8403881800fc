use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} parameter(s), got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("{0} is not a one-dimensional family")]
    NotOneDimensional(&'static str),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("invalid config field `{field}`: {message}")]
    InvalidConfig { field: String, message: String },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("witness undefined: {0}")]
    Witness(String),
    #[error("indices must be strictly increasing positive integers")]
    Indices,
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
