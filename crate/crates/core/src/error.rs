use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected {1})")]
    UnsupportedDimension(usize, &'static str),

    #[error("element index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cannot parse Boolean matrix {0:?}")]
    Parse(String),

    #[error("generator closure has {found} elements, expected {expected}")]
    ClosureFailure { found: usize, expected: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("LLL parameter must satisfy 1/4 < delta < 1, got {0}")]
    BadLllDelta(String),

    #[error("radical nullity is {found}, expected {expected}")]
    UnexpectedNullity { found: usize, expected: usize },

    #[error("non-regular product {0} has no radical row with that leading index")]
    MissingRadicalRow(u32),

    #[error("vector {0} is not central over the rationals")]
    NotCentral(usize),

    #[error("product is not contained in the span: {0}")]
    NotInSpan(String),

    #[error("minimal polynomial has a non-linear irreducible factor: {0}")]
    NonLinearFactor(String),

    #[error("minimal polynomial has a repeated root {0}")]
    RepeatedRoot(String),

    #[error("no splitting element found for a central ideal of dimension {0}")]
    NoSplittingElement(usize),

    #[error("ideal dimension {0} is not a perfect square")]
    NotSquare(usize),

    #[error("no generator of a minimal left ideal found in an ideal of dimension {0}")]
    NoMinimalLeftIdeal(usize),

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("structural check failed: {0}")]
    Structure(String),

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
