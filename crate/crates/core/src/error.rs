use thiserror::Error;

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub msg: String,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    pub fn new(msg: impl Into<String>, line: usize, col: usize) -> Self {
        ParseError { msg: msg.into(), line, col }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index `{0}` occurs more than twice in one term")]
    IndexOveruse(String),
    #[error("free index `{0}` appears on both sides of a product")]
    SignatureClash(String),
    #[error("free-index arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("index `{0}` has no numeric binding")]
    Unbound(String),
    #[error("numeric sampling failed: {0}")]
    Sampling(String),
    #[error("truncation budget exceeded: need degree {needed}, basis has {available}")]
    Budget { needed: usize, available: usize },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("expression is not kernel-valued: {0}")]
    NotKernel(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
