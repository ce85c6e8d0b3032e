//! Machine-readable output documents.
//!
//! Column indices are 1-based in every document, matching the d_1 ... d_s
//! naming convention used for direction sets. Numbers serialize with
//! shortest round-trip formatting.

use serde::Serialize;

use crate::cosine::{CosineReport, EngineMode};
use crate::enumerate::EnumStats;
use crate::oracle::{OracleEstimate, OracleMethod};
use crate::spanset::Classification;

#[derive(Debug, Clone, Serialize)]
pub struct StatsDocument {
    pub subsets_examined: u64,
    pub bases_found: u64,
    pub skipped_singular: u64,
}

impl From<&EnumStats> for StatsDocument {
    fn from(s: &EnumStats) -> Self {
        StatsDocument {
            subsets_examined: s.subsets_examined,
            bases_found: s.bases_found,
            skipped_singular: s.skipped_singular,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleDocument {
    pub value: f64,
    pub error_bound: f64,
    pub method: OracleMethod,
    pub seed: u64,
}

impl From<&OracleEstimate> for OracleDocument {
    fn from(e: &OracleEstimate) -> Self {
        OracleDocument {
            value: e.value,
            error_bound: e.error_bound,
            method: e.method,
            seed: e.seed,
        }
    }
}

/// The full measure report emitted by the `cm` command.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub cm: f64,
    pub mode: EngineMode,
    pub classification: Classification,
    pub cosine_vectors: Vec<Vec<f64>>,
    /// 1-based column indices, one list per cosine vector.
    pub active_sets: Vec<Vec<usize>>,
    /// 1-based column index tuples of the minimizing bases.
    pub argmin_bases: Vec<Vec<usize>>,
    pub min_gamma: f64,
    pub stats: StatsDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDocument>,
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

impl ReportDocument {
    pub fn new(
        report: &CosineReport,
        classification: Classification,
        oracle: Option<&OracleEstimate>,
    ) -> Self {
        ReportDocument {
            cm: report.cm,
            mode: report.mode,
            classification,
            cosine_vectors: report.cosine_vectors.clone(),
            active_sets: report.active_sets.iter().map(|a| one_based(a)).collect(),
            argmin_bases: report
                .argmin
                .iter()
                .map(|r| one_based(&r.selection.indices))
                .collect(),
            min_gamma: report.min_gamma,
            stats: StatsDocument::from(&report.stats),
            oracle: oracle.map(OracleDocument::from),
        }
    }
}

/// Output of the `check` command.
#[derive(Debug, Clone, Serialize)]
pub struct CheckDocument {
    pub classification: Classification,
    pub n: usize,
    pub s: usize,
    pub positively_independent: bool,
}

/// Output of the standalone `oracle` command.
#[derive(Debug, Clone, Serialize)]
pub struct OracleOnlyDocument {
    pub value: f64,
    pub error_bound: f64,
    pub method: OracleMethod,
    pub samples: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_spanning_witness: Option<Vec<f64>>,
}

impl From<&OracleEstimate> for OracleOnlyDocument {
    fn from(e: &OracleEstimate) -> Self {
        OracleOnlyDocument {
            value: e.value,
            error_bound: e.error_bound,
            method: e.method,
            samples: e.samples,
            seed: e.seed,
            non_spanning_witness: e.non_spanning_witness().map(|w| w.to_vec()),
        }
    }
}
