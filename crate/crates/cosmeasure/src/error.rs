use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A symmetric solve hit a nonpositive or near-zero diagonal pivot.
    #[error("matrix is not positive definite (pivot {pivot:.3e} at step {step})")]
    NotPositiveDefinite { step: usize, pivot: f64 },

    /// LU factorization produced a pivot too small relative to the largest.
    #[error("matrix is numerically singular (min |pivot| {min_abs_pivot:.3e})")]
    Singular { min_abs_pivot: f64 },

    /// A column of the input has norm below the zero threshold.
    #[error("column {0} has near-zero norm")]
    ZeroVector(usize),

    /// The columns do not even linearly span the ambient space.
    #[error("set does not linearly span the space (rank {rank} < {needed})")]
    NotSpanning { rank: usize, needed: usize },

    /// Full rank, but no strictly positive combination of the columns is zero.
    #[error("set spans linearly but does not positively span the space")]
    NotPositivelySpanning,

    /// A generator was handed a delta that is not strictly positive.
    #[error("delta {index} is not strictly positive ({value})")]
    NonPositiveDelta { index: usize, value: f64 },

    /// Enumeration would visit more subsets than the configured cap.
    #[error("{required} subsets to examine exceeds the limit {limit}")]
    LimitExceeded { required: u64, limit: u64 },

    /// The abridged engine only accepts minimal and maximal positive bases.
    #[error("abridged mode requires a minimal or maximal positive basis, got {0}")]
    WrongClassification(String),

    /// The columns active at a cosine vector failed the full-rank check.
    #[error("active set {indices:?} has rank {rank} < {needed}")]
    RankDeficientActiveSet {
        indices: Vec<usize>,
        rank: usize,
        needed: usize,
    },

    /// The sampling oracle only covers spheres, the gap oracle only the plane.
    #[error("operation requires dimension {needed}, input has {got}")]
    WrongDimension { needed: usize, got: usize },

    /// Malformed input file or bad parameter value.
    #[error("parse error: {0}")]
    Parse(String),

    /// Tolerance interplay the enumeration filter did not anticipate.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
