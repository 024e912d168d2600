use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("multiplicatively closed set contains 0")]
    McsContainsZero,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("module of order {size} exceeds the bound {bound}")]
    SizeBound { size: u64, bound: u64 },
    #[error("parent module mismatch")]
    ParentMismatch,
    #[error("submodule is not proper")]
    NotProper,
    #[error("module is not a multiplication module")]
    NotMultiplication,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown proposition id {0}")]
    UnknownProp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
