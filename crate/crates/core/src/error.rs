use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} relations vs {right} relations")]
    ArityMismatch { left: usize, right: usize },
    #[error("operation requires arity {expected}, system has arity {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("ground set size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("element {element} out of range for a ground set of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error("element {0} listed more than once")]
    Duplicate(usize),
    #[error("system is not reduced: elements {0} and {1} are not separated by any relation")]
    NotReduced(usize, usize),
    #[error("relations {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("size {size} exceeds the cap of {cap}")]
    SizeCap { size: u128, cap: u128 },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid latin square: {0}")]
    InvalidLatin(String),
    #[error("invalid ultrametric: {0}")]
    InvalidUltrametric(String),
    #[error("subset is not contained in the point set: {0}")]
    NotSubset(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
