use thiserror::Error;

/// Errors shared across the crate.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("improper partition: {0}")]
    ImproperPartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cap exceeded: {task} needs {needed}, cap is {cap}")]
    CapExceeded {
        task: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("functional is not generic: a'_{i} + {m} collides with a'_{j} + {l}")]
    NonGenericFunctional { i: u8, m: u32, j: u8, l: u32 },

    #[error("word has a nesting")]
    NestingWord,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field grid of size {0} exceeds the cap")]
    TooLarge(u128),

    #[error("point lies outside the box of the composition")]
    OutOfBox,

    #[error("positions {k} and {next} do not hold an ascending pair of distinct letters")]
    NotSwappable { k: usize, next: usize },

    #[error("operation requires dimension {required}, got {got}")]
    UnsupportedDimension { required: usize, got: usize },

    #[error("unknown verification suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
