//! The measure engine.
//!
//! For every basis contained in the set there is a unique unit vector
//! making equal positive dot products with all basis columns; the equal
//! value is gamma = 1/sqrt(1^T G^{-1} 1) over the basis Gram matrix. The
//! cosine measure is the minimum over bases of the largest dot product of
//! that vector against the whole set. Two engines sit behind
//! [`MeasureEngine`]: the full engine scores each basis by that largest
//! dot product, and the abridged engine scores by gamma alone, which is
//! only valid for minimal and maximal positive bases.

use rayon::prelude::*;

use crate::enumerate::{
    self, BasisEnumerator, BasisSelection, EnumStats,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::spanset::{Classification, SpanSet};
use crate::tol::{self, Tolerances};

/// Dot products of one direction against every column of the set.
#[derive(Debug, Clone)]
pub struct DotProfile {
    pub dots: Vec<f64>,
    pub max_dot: f64,
    /// First index attaining the maximum; diagnostic only.
    pub argmax: usize,
}

/// Per-basis bundle: gamma, its direction, and (in full mode) the profile.
#[derive(Debug, Clone)]
pub struct GammaRecord {
    pub selection: BasisSelection,
    pub gamma: f64,
    pub direction: Vec<f64>,
    /// Absent when the abridged engine skipped the profile.
    pub profile: Option<DotProfile>,
}

impl GammaRecord {
    /// The quantity minimized over bases by the owning engine.
    fn score(&self) -> f64 {
        match &self.profile {
            Some(p) => p.max_dot,
            None => self.gamma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EngineMode {
    Full,
    Abridged,
}

/// Everything the engines produce.
#[derive(Debug, Clone)]
pub struct CosineReport {
    pub cm: f64,
    /// Deduplicated minimizing unit vectors.
    pub cosine_vectors: Vec<Vec<f64>>,
    /// Per cosine vector, the 0-based columns whose dot product equals cm.
    pub active_sets: Vec<Vec<usize>>,
    /// Records of every basis inside the tie band, in index order.
    pub argmin: Vec<GammaRecord>,
    /// Minimum of gamma over all bases; differs from cm in general.
    pub min_gamma: f64,
    /// The basis attaining `min_gamma` (first in index order on ties).
    pub min_gamma_record: GammaRecord,
    pub stats: EnumStats,
    pub mode: EngineMode,
}

impl CosineReport {
    /// 0-based index tuples of the bases attaining the measure.
    pub fn argmin_bases(&self) -> Vec<Vec<usize>> {
        self.argmin.iter().map(|r| r.selection.indices.clone()).collect()
    }
}

/// Engine knobs; defaults match the library constants.
#[derive(Debug, Clone, Copy)]
pub struct ComputeOptions {
    pub limit: u64,
    /// Thread count for per-basis evaluation; `None` uses the global pool.
    pub workers: Option<usize>,
    pub tolerances: Tolerances,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            limit: tol::DEFAULT_SUBSET_LIMIT,
            workers: None,
            tolerances: Tolerances::default(),
        }
    }
}

/// A measure algorithm selectable by name.
pub trait MeasureEngine: Send + Sync {
    fn name(&self) -> &'static str;
    fn mode(&self) -> EngineMode;
    fn compute(&self, set: &SpanSet, opts: &ComputeOptions) -> Result<CosineReport>;
}

/// Scores each basis by the largest dot product of its direction against
/// the whole set. Valid for every positive spanning set.
pub struct FullEngine;

/// Scores each basis by gamma alone, skipping the dot profiles. Valid
/// only for minimal and maximal positive bases.
pub struct AbridgedEngine;

impl MeasureEngine for FullEngine {
    fn name(&self) -> &'static str {
        "full"
    }

    fn mode(&self) -> EngineMode {
        EngineMode::Full
    }

    fn compute(&self, set: &SpanSet, opts: &ComputeOptions) -> Result<CosineReport> {
        run_engine(set, opts, EngineMode::Full)
    }
}

impl MeasureEngine for AbridgedEngine {
    fn name(&self) -> &'static str {
        "abridged"
    }

    fn mode(&self) -> EngineMode {
        EngineMode::Abridged
    }

    fn compute(&self, set: &SpanSet, opts: &ComputeOptions) -> Result<CosineReport> {
        match set.classification() {
            Classification::MinimalPositiveBasis | Classification::MaximalPositiveBasis => {
                run_engine(set, opts, EngineMode::Abridged)
            }
            other => Err(Error::WrongClassification(other.to_string())),
        }
    }
}

/// Full run with default options.
pub fn cosine_measure_full(set: &SpanSet, limit: u64) -> Result<CosineReport> {
    FullEngine.compute(
        set,
        &ComputeOptions {
            limit,
            ..ComputeOptions::default()
        },
    )
}

/// Abridged run with default options.
pub fn cosine_measure_abridged(set: &SpanSet, limit: u64) -> Result<CosineReport> {
    AbridgedEngine.compute(
        set,
        &ComputeOptions {
            limit,
            ..ComputeOptions::default()
        },
    )
}

/// Gamma and its direction for one basis.
///
/// The symmetric solve `G y = 1` acts as the positive-definiteness gate
/// and propagates `NotPositiveDefinite` when the candidate is numerically
/// rank-deficient despite passing the rank filter. The returned values
/// come from the transposed system `B^T w = 1`: since `1^T G^{-1} 1` is
/// exactly `||w||^2`, gamma = 1/||w|| and u = w/||w|| are the same
/// quantities without squaring the basis conditioning, so the
/// reconstruction checks below hold at machine precision whenever the
/// gate passes. A failure still means the filter and the solves fell out
/// of step, which is reported, never skipped.
pub fn gamma_u(selection: &BasisSelection) -> Result<(f64, Vec<f64>)> {
    let n = selection.indices.len();
    let ones = vec![1.0; n];
    let y = linalg::spd_solve(&selection.gram_sub, &ones)?;
    let sum_y: f64 = y.iter().sum();
    if sum_y <= 0.0 || sum_y.is_nan() {
        return Err(Error::Internal(format!(
            "nonpositive 1^T G^{{-1}} 1 = {sum_y:.3e} for basis {:?}",
            selection.indices
        )));
    }
    let w = linalg::lu_solve(&selection.basis_matrix, &ones, true)?;
    let scale = linalg::norm(&w);
    if scale <= 0.0 || !scale.is_finite() {
        return Err(Error::Internal(format!(
            "degenerate equal-dot solve for basis {:?}",
            selection.indices
        )));
    }
    let gamma = 1.0 / scale;
    let direction: Vec<f64> = w.iter().map(|x| x * gamma).collect();

    for (k, d) in (0..n).map(|k| (k, selection.basis_matrix.column(k))) {
        let dp = linalg::dot(&direction, d);
        if (dp - gamma).abs() > tol::GAMMA_DOT {
            return Err(Error::Internal(format!(
                "dot product {dp:.17} deviates from gamma {gamma:.17} on basis {:?} column {k}",
                selection.indices
            )));
        }
    }
    let nrm = linalg::norm(&direction);
    if (nrm - 1.0).abs() > tol::UNIT_NORM {
        return Err(Error::Internal(format!(
            "direction norm {nrm:.17} for basis {:?} is not unit",
            selection.indices
        )));
    }
    Ok((gamma, direction))
}

/// Dot products of a unit direction against every column.
pub fn dot_profile(direction: &[f64], set: &SpanSet) -> DotProfile {
    let dots: Vec<f64> = (0..set.s())
        .map(|i| linalg::dot(direction, set.unit_columns().column(i)))
        .collect();
    let (argmax, max_dot) = dots
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| {
            if v > acc.1 {
                (i, v)
            } else {
                acc
            }
        });
    DotProfile {
        dots,
        max_dot,
        argmax,
    }
}

/// Columns whose dot product with the direction equals the measure.
///
/// The returned columns always span the whole space for a true cosine
/// vector; a rank deficit signals tolerance interplay and is reported
/// with diagnostics.
pub fn active_set(
    direction: &[f64],
    set: &SpanSet,
    cm: f64,
    tolerances: &Tolerances,
) -> Result<Vec<usize>> {
    let profile = dot_profile(direction, set);
    if (profile.max_dot - cm).abs() > tol::GAMMA_DOT {
        return Err(Error::Internal(format!(
            "direction attains {:.17}, not the measure {cm:.17}",
            profile.max_dot
        )));
    }
    let indices: Vec<usize> = profile
        .dots
        .iter()
        .enumerate()
        .filter(|(_, &d)| (d - cm).abs() <= tolerances.active_set)
        .map(|(i, _)| i)
        .collect();
    let sub = set.unit_columns().take_columns(&indices);
    let rank = linalg::rank(&sub, tol::RANK_PIVOT);
    if rank < set.n() {
        return Err(Error::RankDeficientActiveSet {
            indices,
            rank,
            needed: set.n(),
        });
    }
    Ok(indices)
}

enum Outcome {
    Singular,
    Record(Box<GammaRecord>),
    Failed(Error),
}

fn evaluate_subset(set: &SpanSet, indices: &[usize], with_profile: bool) -> Outcome {
    let Some(selection) = enumerate::build_selection(set, indices) else {
        return Outcome::Singular;
    };
    let (gamma, direction) = match gamma_u(&selection) {
        Ok(v) => v,
        Err(e) => return Outcome::Failed(e),
    };
    let profile = if with_profile {
        let p = dot_profile(&direction, set);
        if gamma > p.max_dot + tol::TIE_ABS {
            return Outcome::Failed(Error::Internal(format!(
                "gamma {gamma:.17} exceeds max dot {:.17} on basis {indices:?}",
                p.max_dot
            )));
        }
        Some(p)
    } else {
        None
    };
    Outcome::Record(Box::new(GammaRecord {
        selection,
        gamma,
        direction,
        profile,
    }))
}

const CHUNK: usize = 2048;

fn run_engine(set: &SpanSet, opts: &ComputeOptions, mode: EngineMode) -> Result<CosineReport> {
    match opts.workers {
        None => drive(set, opts, mode),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(|| drive(set, opts, mode)),
    }
}

/// Chunked evaluation with a deterministic serial merge: chunks are
/// evaluated in parallel but folded in index order, so the outcome is
/// independent of the worker count.
fn drive(set: &SpanSet, opts: &ComputeOptions, mode: EngineMode) -> Result<CosineReport> {
    let with_profile = mode == EngineMode::Full;
    let tols = &opts.tolerances;
    let enumerators = enumerate::default_enumerators();
    let strategy: &dyn BasisEnumerator = enumerators
        .iter()
        .find(|e| e.supports(set))
        .expect("generic always applies")
        .as_ref();
    enumerate::guard_limit(strategy, set, opts.limit)?;

    let mut stats = EnumStats {
        subsets_examined: 0,
        bases_found: 0,
        skipped_singular: 0,
        mode: strategy.mode(),
    };
    let mut best = f64::INFINITY;
    let mut candidates: Vec<GammaRecord> = Vec::new();
    let mut min_gamma = f64::INFINITY;
    let mut min_gamma_record: Option<GammaRecord> = None;

    let mut subsets = strategy.subsets(set);
    loop {
        let block: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
        if block.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = block
            .par_iter()
            .map(|tuple| evaluate_subset(set, tuple, with_profile))
            .collect();
        for outcome in outcomes {
            stats.subsets_examined += 1;
            match outcome {
                Outcome::Singular => stats.skipped_singular += 1,
                Outcome::Failed(e) => return Err(e),
                Outcome::Record(rec) => {
                    stats.bases_found += 1;
                    if rec.gamma < min_gamma {
                        min_gamma = rec.gamma;
                        min_gamma_record = Some((*rec).clone());
                    }
                    let score = rec.score();
                    if score < best {
                        best = score;
                        let band = tols.tie_band(best);
                        candidates.retain(|c| c.score() <= band);
                    }
                    if score <= tols.tie_band(best) {
                        candidates.push(*rec);
                    }
                }
            }
        }
    }

    let Some(min_gamma_record) = min_gamma_record else {
        return Err(Error::Internal(
            "no basis found in a validated positive spanning set".into(),
        ));
    };
    let cm = best;
    let band = tols.tie_band(cm);
    let argmin: Vec<GammaRecord> = candidates
        .into_iter()
        .filter(|c| c.score() <= band)
        .collect();

    // Deduplicate minimizing directions and compute their active sets.
    // A basis can sit inside a user-widened tie band without attaining
    // the measure; such bases stay in `argmin` for reporting but their
    // directions are not cosine vectors.
    let mut cosine_vectors: Vec<Vec<f64>> = Vec::new();
    let mut active_sets: Vec<Vec<usize>> = Vec::new();
    for rec in &argmin {
        let max_dot = match &rec.profile {
            Some(p) => p.max_dot,
            None => dot_profile(&rec.direction, set).max_dot,
        };
        if (max_dot - cm).abs() > tol::GAMMA_DOT {
            continue;
        }
        let duplicate = cosine_vectors.iter().any(|v| {
            v.iter()
                .zip(&rec.direction)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                <= tols.dedup
        });
        if duplicate {
            continue;
        }
        let active = active_set(&rec.direction, set, cm, tols)?;
        cosine_vectors.push(rec.direction.clone());
        active_sets.push(active);
    }

    Ok(CosineReport {
        cm,
        cosine_vectors,
        active_sets,
        argmin,
        min_gamma,
        min_gamma_record,
        stats,
        mode,
    })
}
