//! Shared helpers for the integration suites: seeded instance generators
//! and small assertion utilities. Everything is deterministic for a fixed
//! seed so failures reproduce exactly.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use cosmeasure::spanset::{classify, SpanSet, VectorSet};
use cosmeasure::{linalg, Matrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let nrm = linalg::norm(&v);
        if nrm > 1e-6 {
            return v.iter().map(|x| x / nrm).collect();
        }
    }
}

pub fn random_unit_columns(rng: &mut ChaCha8Rng, n: usize, s: usize) -> VectorSet {
    let cols: Vec<Vec<f64>> = (0..s).map(|_| random_unit_vector(rng, n)).collect();
    VectorSet::from_columns(&cols).expect("finite columns")
}

/// Random positive spanning set of dimension n with at most s_max vectors,
/// obtained by rejection. Sizes are drawn from n+1 ..= s_max.
///
/// Instances containing an n-subset whose pivot falls between the rank
/// threshold and 1e-5 are redrawn: bases in that band are rejected by the
/// positive-definiteness gate, a reported-error path exercised by its own
/// tests, not by the randomized certification suites.
pub fn random_pss(rng: &mut ChaCha8Rng, n: usize, s_max: usize) -> SpanSet {
    'draw: loop {
        let s = rng.random_range(n + 1..=s_max);
        let v = random_unit_columns(rng, n, s);
        let Ok(set) = classify(&v) else {
            continue;
        };
        let mut tuple: Vec<usize> = (0..n).collect();
        loop {
            let sub = set.unit_columns().take_columns(&tuple);
            let pivot = cosmeasure::rank_certify(&sub).min_abs_pivot;
            if pivot > 1e-10 && pivot <= 1e-5 {
                continue 'draw;
            }
            let mut i = n;
            while i > 0 && tuple[i - 1] == s - n + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            tuple[i - 1] += 1;
            for j in i..n {
                tuple[j] = tuple[j - 1] + 1;
            }
        }
        return set;
    }
}

/// Random well-conditioned basis matrix with unit columns.
pub fn random_basis(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let cols: Vec<Vec<f64>> = (0..n).map(|_| random_unit_vector(rng, n)).collect();
        let m = Matrix::from_columns(&cols).unwrap();
        if cosmeasure::rank_certify(&m).min_abs_pivot > 1e-2 {
            return m;
        }
    }
}

/// Random minimal positive basis: a basis plus the negated strictly
/// positive combination of its columns. Redrawn until the classifier
/// agrees, so callers can rely on the tag.
pub fn random_minimal(rng: &mut ChaCha8Rng, n: usize) -> VectorSet {
    loop {
        let basis = random_basis(rng, n);
        let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..2.0)).collect();
        let mut last = vec![0.0; n];
        for (c, w) in weights.iter().enumerate() {
            for (r, l) in last.iter_mut().enumerate() {
                *l -= w * basis.get(r, c);
            }
        }
        let mut cols: Vec<Vec<f64>> = (0..n).map(|c| basis.column(c).to_vec()).collect();
        cols.push(last);
        let v = VectorSet::from_columns(&cols).unwrap();
        if matches!(
            classify(&v).map(|s| s.classification()),
            Ok(cosmeasure::Classification::MinimalPositiveBasis)
        ) {
            return v;
        }
    }
}

/// Random maximal positive basis from a random basis and random deltas.
pub fn random_maximal(rng: &mut ChaCha8Rng, n: usize) -> VectorSet {
    loop {
        let basis = random_basis(rng, n);
        let deltas: Vec<f64> = (0..n).map(|_| rng.random_range(0.3..3.0)).collect();
        let v = cosmeasure::gen_maximal(n, Some(&basis), Some(&deltas)).unwrap();
        let want = if n == 1 {
            cosmeasure::Classification::MinimalPositiveBasis
        } else {
            cosmeasure::Classification::MaximalPositiveBasis
        };
        if matches!(classify(&v).map(|s| s.classification()), Ok(c) if c == want) {
            return v;
        }
    }
}

/// Random orthogonal matrix via Gram-Schmidt on a random square matrix,
/// re-orthogonalized once for accuracy.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| StandardNormal.sample(rng)).collect())
            .collect();
        let mut ok = true;
        for c in 0..n {
            for _pass in 0..2 {
                for prev in 0..c {
                    let proj = linalg::dot(&cols[c], &cols[prev]);
                    let prev_col = cols[prev].clone();
                    for (x, p) in cols[c].iter_mut().zip(&prev_col) {
                        *x -= proj * p;
                    }
                }
            }
            let nrm = linalg::norm(&cols[c]);
            if nrm < 1e-6 {
                ok = false;
                break;
            }
            for x in cols[c].iter_mut() {
                *x /= nrm;
            }
        }
        if ok {
            return Matrix::from_columns(&cols).unwrap();
        }
    }
}

/// Apply a matrix to every column of a set.
pub fn apply(q: &Matrix, v: &VectorSet) -> VectorSet {
    let cols: Vec<Vec<f64>> = (0..v.s())
        .map(|c| q.mat_vec(v.column(c), false))
        .collect();
    VectorSet::from_columns(&cols).unwrap()
}

/// Scale column i by factors[i].
pub fn scale_columns(v: &VectorSet, factors: &[f64]) -> VectorSet {
    let cols: Vec<Vec<f64>> = (0..v.s())
        .map(|c| v.column(c).iter().map(|x| x * factors[c]).collect())
        .collect();
    VectorSet::from_columns(&cols).unwrap()
}

/// Reorder columns by the permutation (new position i takes old column perm[i]).
pub fn permute_columns(v: &VectorSet, perm: &[usize]) -> VectorSet {
    let cols: Vec<Vec<f64>> = perm.iter().map(|&c| v.column(c).to_vec()).collect();
    VectorSet::from_columns(&cols).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Set equality of vector lists under the max norm, tolerance per entry.
pub fn same_vector_set(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .all(|v| b.iter().any(|w| max_abs_diff(v, w) <= tol))
        && b.iter()
            .all(|v| a.iter().any(|w| max_abs_diff(v, w) <= tol))
}
