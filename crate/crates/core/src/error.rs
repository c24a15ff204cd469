use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank {k} is out of range for {len} items")]
    RankOutOfRange { k: usize, len: usize },

    #[error("weight target {target} exceeds total weight {total}")]
    WeightOutOfRange { target: u64, total: u64 },

    #[error("item weights must be at least 1")]
    ZeroWeight,

    #[error("error parameter {0} must lie strictly between 0 and {1}")]
    InvalidEpsilon(f64, f64),

    #[error("extract-min on an empty soft heap")]
    EmptyHeap,

    #[error("the source holds fewer than {k} items")]
    NotEnoughItems { k: usize },

    #[error("arity must be at least {min}, got {d}")]
    InvalidArity { d: usize, min: usize },

    #[error("a node has {degree} children, more than the limit of {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("heap order violated at node {node}")]
    HeapOrder { node: usize },

    #[error("row {row} is not sorted at column {col}")]
    UnsortedRow { row: usize, col: usize },

    #[error("row {row}: count {count} exceeds the row length")]
    CountExceedsRow { row: usize, count: usize },

    #[error("row {row} is empty")]
    EmptyRow { row: usize },

    #[error("expected {expected} rows, got {got}")]
    RowMismatch { expected: usize, got: usize },

    #[error("input set is empty")]
    EmptyInput,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("instance too large for exhaustive evaluation: {0}")]
    TooLarge(String),
}
