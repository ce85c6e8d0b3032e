//! Pinned numeric thresholds.
//!
//! All columns are unit vectors once a set is validated, so absolute and
//! relative thresholds coincide and every constant below is absolute.

/// A column with Euclidean norm below this is treated as the zero vector.
pub const ZERO_VECTOR: f64 = 1e-12;

/// LU pivot threshold deciding whether an n-subset counts as a basis.
pub const RANK_PIVOT: f64 = 1e-10;

/// Diagonal pivot threshold for the symmetric positive-definite solve.
pub const SPD_PIVOT: f64 = 1e-12;

/// Feasibility residual for the positive-combination certificates.
pub const FEASIBILITY: f64 = 1e-8;

/// Allowed deviation of the equal dot products from gamma.
pub const GAMMA_DOT: f64 = 1e-8;

/// Allowed deviation of a cosine-vector norm from one.
pub const UNIT_NORM: f64 = 1e-9;

/// Gram entries at -1 within this are antipodal column pairs.
pub const ANTIPODAL: f64 = 1e-10;

/// Membership band for the active set: |u.d - cm| at most this.
pub const ACTIVE_SET: f64 = 1e-9;

/// Relative part of the argmin tie band over basis scores.
pub const TIE_REL: f64 = 1e-9;

/// Absolute part of the argmin tie band.
pub const TIE_ABS: f64 = 1e-12;

/// Two cosine vectors within this in the max norm are the same minimizer.
pub const DEDUP: f64 = 1e-8;

/// Default cap on the number of subsets the enumeration will visit.
pub const DEFAULT_SUBSET_LIMIT: u64 = 10_000_000;

/// Runtime-adjustable subset of the thresholds above.
///
/// Everything not listed here is structural and stays fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub tie_rel: f64,
    pub tie_abs: f64,
    pub dedup: f64,
    pub active_set: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tie_rel: TIE_REL,
            tie_abs: TIE_ABS,
            dedup: DEDUP,
            active_set: ACTIVE_SET,
        }
    }
}

impl Tolerances {
    /// Upper edge of the tie band around a minimal score.
    pub fn tie_band(&self, best: f64) -> f64 {
        best * (1.0 + self.tie_rel) + self.tie_abs
    }
}
