use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Ring(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid group: {0}")]
    Group(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("code too large to enumerate: binary rank {rank} exceeds {limit}")]
    TooLarge { rank: usize, limit: usize },
    #[error("{0}")]
    Code(String),
    #[error("{0}")]
    Search(String),
}

pub type Result<T> = std::result::Result<T, Error>;
