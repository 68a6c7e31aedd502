use thiserror::Error;

use crate::dsl::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("inconclusive: budget exhausted after {explored} explored nodes")]
    Inconclusive { explored: u64 },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
