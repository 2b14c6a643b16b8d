use thiserror::Error;

use crate::word::Letter;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("letter {letter} outside finite alphabet of {size} letters")]
    InvalidLetter { letter: Letter, size: usize },

    #[error("word is not blockable: {0}")]
    NotBlockable(String),

    #[error("word is not rankable: {0}")]
    NotRankable(String),

    #[error("word outside the operation's domain: {0}")]
    NotInDomain(String),

    #[error("problem size exceeds budget: {0}")]
    TooLarge(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("sampling failed after {attempts} attempts (accepted {accepted}, acceptance rate {rate:.3e})")]
    SamplingFailed {
        attempts: u64,
        accepted: u64,
        rate: f64,
    },

    #[error("cannot parse word: {0}")]
    WordParse(String),

    #[error("cannot parse alphabet: {0}")]
    AlphabetParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
