use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("operation needs a non-empty permutation")]
    EmptyPermutation,
    #[error("invalid pattern basis: {0}")]
    InvalidBasis(String),
    #[error("illegal step character {ch:?} at index {index}")]
    IllegalStep { index: usize, ch: char },
    #[error("path dips below the axis at step {index}")]
    BelowAxis { index: usize },
    #[error("path has length {actual}, expected {expected}")]
    PathLength { expected: usize, actual: usize },
    #[error("permutation {0} is in neither Av(T1) nor Av(T2)")]
    NotInUnion(String),
    #[error("permutation {perm} is not in Av({class})")]
    NotInClass { perm: String, class: String },
    #[error("permutation {0} does not end with its maximum")]
    NotMaxEnding(String),
    #[error("permutation {0} contains 321")]
    Contains321(String),
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("unknown series {0:?}")]
    UnknownSeries(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("exponent {exponent} of {var} exceeds truncation cap {cap}")]
    BeyondCap { var: char, exponent: usize, cap: usize },
    #[error("coefficient {0} is not an integer")]
    NonInteger(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("export failed: {0}")]
    Export(String),
}
