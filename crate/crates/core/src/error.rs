use thiserror::Error;

/// Errors raised by constructors and checkers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ill-defined morphism: {0}")]
    IllDefined(String),
    #[error("invalid cube: {0}")]
    InvalidCube(String),
    #[error("patching condition violated at T={t:?}, t={label}: {detail}")]
    Patching {
        t: String,
        label: String,
        detail: String,
    },
    #[error("naturality failure: {0}")]
    Naturality(String),
    #[error("invalid index: {0}")]
    Index(String),
    #[error("lattice error: {0}")]
    Lattice(String),
    #[error("not free: {0}")]
    NotFree(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no solution: {0}")]
    NoSolution(String),
}

pub type Result<T> = std::result::Result<T, Error>;
