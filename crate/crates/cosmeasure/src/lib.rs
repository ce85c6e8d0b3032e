//! Exact cosine measures of finite positive spanning sets.
//!
//! The cosine measure of a set of nonzero directions is the worst-case,
//! over unit vectors u, of the best normalized dot product between u and
//! the set. It is the standard quality metric for poll-direction sets in
//! derivative-free optimization: a positive measure certifies that every
//! half-space contains a direction, and larger is better.
//!
//! The measure is computed exactly by enumerating the bases contained in
//! the set: each basis has a unique unit vector with equal positive dot
//! products against its columns, and the measure is the minimum over
//! bases of that vector's largest dot product against the whole set.
//! Independent brute-force oracles (exact in the plane, sampled on the
//! sphere) certify the result.
//!
//! ```
//! use cosmeasure::{classify, cosine_measure_full, gen_minimal};
//!
//! let set = classify(&gen_minimal(2)).unwrap();
//! let report = cosine_measure_full(&set, 1_000_000).unwrap();
//! assert!((report.cm - 0.3826834).abs() < 1e-6);
//! ```

pub mod cosine;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod registry;
pub mod report;
pub mod simplex;
pub mod spanset;
pub mod tol;

pub use cosine::{
    active_set, cosine_measure_abridged, cosine_measure_full, dot_profile, gamma_u,
    AbridgedEngine, ComputeOptions, CosineReport, DotProfile, EngineMode, FullEngine,
    GammaRecord, MeasureEngine,
};
pub use enumerate::{
    enum_bases, select_mode, BasisEnumerator, BasisSelection, EnumMode, EnumStats,
};
pub use error::{Error, Result};
pub use linalg::{lu_solve, rank_certify, spd_solve, LuFactors, Matrix, RankCertificate};
pub use oracle::{
    angular_gap_cm, sphere_sample_cm, CosineEstimator, OracleEstimate, OracleMethod,
};
pub use registry::StrategyRegistry;
pub use spanset::{
    classify, gen_maximal, gen_minimal, normalize, paper_example, positive_independent,
    validate_pss, Classification, PssCertificate, SpanSet, VectorSet,
};
pub use tol::Tolerances;
