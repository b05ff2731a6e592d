use thiserror::Error;

use crate::lang::Word;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid source: {0}")]
    InvalidSource(String),
    #[error("insufficient generator depth: requested {requested}, generator certifies only {available}")]
    InsufficientGeneratorDepth { requested: usize, available: usize },
    #[error("operation needs words of length {needed} but the table depth is {depth}")]
    DepthExceeded { needed: usize, depth: usize },
    #[error("language is empty at length {0}")]
    EmptyLanguage(usize),
    #[error("substitution did not stabilize within {0} iterations")]
    NoStabilization(usize),
    #[error("window {window} is outside the code's domain")]
    Domain { window: Word },
    #[error("word of length {len} is not aligned to blocks of length {block_len}")]
    Alignment { len: usize, block_len: usize },
    #[error("block at offset {offset} is not an A_{level} word")]
    UnknownBlock { level: usize, offset: usize },
    #[error("search budget of {budget} nodes exceeded after {found} complete codes")]
    BudgetExceeded { budget: u64, found: usize },
    #[error("invalid group chain: {0}")]
    InvalidChain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
