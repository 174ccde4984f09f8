use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    Structural(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("tangle composition failed: {0}")]
    Composition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("linear system is inconsistent: {0}")]
    Solver(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
