//! Streams every n-column basis contained in a validated set.
//!
//! Three interchangeable strategies sit behind [`BasisEnumerator`]: the
//! generic lexicographic scan of all n-subsets, a drop-one shortcut for
//! minimal positive bases (n+1 subsets, all of them bases), and a
//! sign-pattern shortcut for maximal positive bases (2^n subsets). The
//! shortcuts change the subsets visited, never the bases found.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::spanset::{Classification, SpanSet};
use crate::tol;

/// One n-subset of columns certified as a basis.
#[derive(Debug, Clone)]
pub struct BasisSelection {
    /// Strictly increasing 0-based column indices.
    pub indices: Vec<usize>,
    /// The n x n matrix of the selected unit columns.
    pub basis_matrix: Matrix,
    /// Slice of the precomputed full Gram matrix, not recomputed.
    pub gram_sub: Matrix,
    pub rank_ok: bool,
    pub min_abs_pivot: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EnumMode {
    Generic,
    MinimalShortcut,
    MaximalShortcut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumStats {
    pub subsets_examined: u64,
    pub bases_found: u64,
    pub skipped_singular: u64,
    pub mode: EnumMode,
}

/// A strategy that knows which n-subsets of a given set can be bases.
pub trait BasisEnumerator: Send + Sync {
    /// Registry key.
    fn name(&self) -> &'static str;

    fn mode(&self) -> EnumMode;

    /// Whether this strategy is valid for the given set.
    fn supports(&self, set: &SpanSet) -> bool;

    /// Number of subsets a run would examine, if representable.
    fn planned_subsets(&self, set: &SpanSet) -> Option<u64>;

    /// The candidate index tuples, each strictly increasing, in
    /// lexicographic order.
    fn subsets<'a>(&self, set: &'a SpanSet) -> Box<dyn Iterator<Item = Vec<usize>> + Send + 'a>;
}

/// Full lexicographic scan of all C(s, n) subsets.
pub struct GenericEnumerator;

/// Drop-one-column scan for minimal positive bases.
pub struct MinimalShortcutEnumerator;

/// Sign-pattern scan over antipodal column pairs for maximal positive bases.
pub struct MaximalShortcutEnumerator;

impl BasisEnumerator for GenericEnumerator {
    fn name(&self) -> &'static str {
        "generic"
    }

    fn mode(&self) -> EnumMode {
        EnumMode::Generic
    }

    fn supports(&self, _set: &SpanSet) -> bool {
        true
    }

    fn planned_subsets(&self, set: &SpanSet) -> Option<u64> {
        binomial(set.s() as u64, set.n() as u64)
    }

    fn subsets<'a>(&self, set: &'a SpanSet) -> Box<dyn Iterator<Item = Vec<usize>> + Send + 'a> {
        Box::new((0..set.s()).combinations(set.n()))
    }
}

impl BasisEnumerator for MinimalShortcutEnumerator {
    fn name(&self) -> &'static str {
        "minimal-shortcut"
    }

    fn mode(&self) -> EnumMode {
        EnumMode::MinimalShortcut
    }

    fn supports(&self, set: &SpanSet) -> bool {
        set.classification() == Classification::MinimalPositiveBasis
    }

    fn planned_subsets(&self, set: &SpanSet) -> Option<u64> {
        Some(set.s() as u64)
    }

    fn subsets<'a>(&self, set: &'a SpanSet) -> Box<dyn Iterator<Item = Vec<usize>> + Send + 'a> {
        // Dropping column i; descending i gives lexicographic tuples.
        let s = set.s();
        Box::new((0..s).rev().map(move |drop| (0..s).filter(|&j| j != drop).collect()))
    }
}

impl MaximalShortcutEnumerator {
    /// Match columns into antipodal pairs via Gram entries at -1.
    /// Returns pairs (i, j), i < j, ordered by i; None if the set does not
    /// decompose that way.
    pub fn antipodal_pairs(set: &SpanSet) -> Option<Vec<(usize, usize)>> {
        let s = set.s();
        let n = set.n();
        if s != 2 * n {
            return None;
        }
        let g = set.gram_full();
        let mut partner = vec![usize::MAX; s];
        for i in 0..s {
            if partner[i] != usize::MAX {
                continue;
            }
            let j = ((i + 1)..s).find(|&j| {
                partner[j] == usize::MAX && (g.get(i, j) + 1.0).abs() <= tol::ANTIPODAL
            })?;
            partner[i] = j;
            partner[j] = i;
        }
        let mut pairs: Vec<(usize, usize)> = (0..s)
            .filter(|&i| i < partner[i])
            .map(|i| (i, partner[i]))
            .collect();
        pairs.sort_unstable();
        (pairs.len() == n).then_some(pairs)
    }
}

impl BasisEnumerator for MaximalShortcutEnumerator {
    fn name(&self) -> &'static str {
        "maximal-shortcut"
    }

    fn mode(&self) -> EnumMode {
        EnumMode::MaximalShortcut
    }

    fn supports(&self, set: &SpanSet) -> bool {
        set.classification() == Classification::MaximalPositiveBasis
            && Self::antipodal_pairs(set).is_some()
    }

    fn planned_subsets(&self, set: &SpanSet) -> Option<u64> {
        1u64.checked_shl(set.n() as u32)
    }

    fn subsets<'a>(&self, set: &'a SpanSet) -> Box<dyn Iterator<Item = Vec<usize>> + Send + 'a> {
        let pairs = Self::antipodal_pairs(set).expect("supports() checked the pairing");
        let n = pairs.len();
        let mut out: Vec<Vec<usize>> = (0..(1u64 << n))
            .map(|bits| {
                let mut tuple: Vec<usize> = pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if bits >> k & 1 == 0 { a } else { b })
                    .collect();
                tuple.sort_unstable();
                tuple
            })
            .collect();
        out.sort_unstable();
        Box::new(out.into_iter())
    }
}

/// C(s, n) if it fits in u64.
pub fn binomial(s: u64, n: u64) -> Option<u64> {
    if n > s {
        return Some(0);
    }
    let k = n.min(s - n);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((s - i) as u128)? / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Pick the preferred strategy for a classified set.
pub fn select_mode(set: &SpanSet) -> EnumMode {
    default_enumerators()
        .iter()
        .find(|e| e.supports(set))
        .expect("generic always applies")
        .mode()
}

/// Built-in strategies in selection-priority order.
pub fn default_enumerators() -> Vec<Box<dyn BasisEnumerator>> {
    vec![
        Box::new(MinimalShortcutEnumerator),
        Box::new(MaximalShortcutEnumerator),
        Box::new(GenericEnumerator),
    ]
}

/// Build the selection record for one index tuple; `None` when the columns
/// fail the rank certificate.
pub fn build_selection(set: &SpanSet, indices: &[usize]) -> Option<BasisSelection> {
    let basis_matrix = set.unit_columns().take_columns(indices);
    let cert = linalg::rank_certify(&basis_matrix);
    if !cert.full_rank {
        return None;
    }
    let n = indices.len();
    let mut gram_sub = Matrix::zeros(n, n);
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            gram_sub.set(a, b, set.gram_full().get(i, j));
        }
    }
    Some(BasisSelection {
        indices: indices.to_vec(),
        basis_matrix,
        gram_sub,
        rank_ok: true,
        min_abs_pivot: cert.min_abs_pivot,
    })
}

/// Refuse to enumerate more subsets than `limit`.
pub fn guard_limit(enumerator: &dyn BasisEnumerator, set: &SpanSet, limit: u64) -> Result<u64> {
    match enumerator.planned_subsets(set) {
        Some(planned) if planned <= limit => Ok(planned),
        Some(planned) => Err(Error::LimitExceeded {
            required: planned,
            limit,
        }),
        None => Err(Error::LimitExceeded {
            required: u64::MAX,
            limit,
        }),
    }
}

/// Enumerate every basis contained in the set, with stats.
///
/// Strategy is auto-selected. Emission order is lexicographic on the index
/// tuples, so two runs produce identical streams.
pub fn enum_bases(set: &SpanSet, limit: u64) -> Result<(Vec<BasisSelection>, EnumStats)> {
    let enumerators = default_enumerators();
    let enumerator = enumerators
        .iter()
        .find(|e| e.supports(set))
        .expect("generic always applies");
    guard_limit(enumerator.as_ref(), set, limit)?;
    let mut stats = EnumStats {
        subsets_examined: 0,
        bases_found: 0,
        skipped_singular: 0,
        mode: enumerator.mode(),
    };
    let mut out = Vec::new();
    for tuple in enumerator.subsets(set) {
        stats.subsets_examined += 1;
        match build_selection(set, &tuple) {
            Some(sel) => {
                stats.bases_found += 1;
                out.push(sel);
            }
            None => stats.skipped_singular += 1,
        }
    }
    if out.is_empty() {
        return Err(Error::Internal(
            "no basis found in a validated positive spanning set".into(),
        ));
    }
    Ok((out, stats))
}
