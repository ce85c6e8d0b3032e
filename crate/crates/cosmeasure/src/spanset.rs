//! Ingestion and classification of direction sets.
//!
//! A set of s nonzero vectors positively spans the space when every vector
//! is a nonnegative combination of the set. Operationally that is checked
//! as: the columns have full rank, and some strictly positive combination
//! of them sums to zero. A positive basis is a positively spanning set in
//! which no vector lies in the positive span of the others; sizes run from
//! n+1 (minimal) to 2n (maximal), with every size in between called
//! intermediate.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::simplex::{self, Feasibility};
use crate::tol;

/// Raw input: an n x s matrix whose columns are the direction vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet {
    mat: Matrix,
}

impl VectorSet {
    pub fn new(mat: Matrix) -> Self {
        VectorSet { mat }
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        Ok(VectorSet::new(Matrix::from_columns(columns)?))
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    /// Number of vectors.
    pub fn s(&self) -> usize {
        self.mat.cols()
    }

    pub fn columns(&self) -> &Matrix {
        &self.mat
    }

    pub fn column(&self, i: usize) -> &[f64] {
        self.mat.column(i)
    }
}

/// Divide every column by its Euclidean norm, preserving order.
pub fn normalize(v: &VectorSet) -> Result<VectorSet> {
    let mut cols = Vec::with_capacity(v.s());
    for i in 0..v.s() {
        let c = v.column(i);
        let nrm = linalg::norm(c);
        if nrm < tol::ZERO_VECTOR {
            return Err(Error::ZeroVector(i));
        }
        cols.push(c.iter().map(|x| x / nrm).collect());
    }
    VectorSet::from_columns(&cols)
}

/// Constructive witness that a set positively spans: strictly positive
/// coefficients summing the columns to zero, scaled so each is >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PssCertificate {
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

/// Check the positive-spanning property of a normalized set.
///
/// Succeeds iff the columns have rank n and some combination with all
/// coefficients >= 1 sums to zero, found by phase-1 feasibility on
/// `sum_i mu_i d_i = -sum_i d_i, mu >= 0` with `lambda = 1 + mu`.
pub fn validate_pss(v: &VectorSet) -> Result<PssCertificate> {
    let n = v.n();
    let rank = linalg::rank(v.columns(), tol::RANK_PIVOT);
    if rank < n {
        return Err(Error::NotSpanning { rank, needed: n });
    }
    let minus_sum: Vec<f64> = (0..n)
        .map(|r| -(0..v.s()).map(|c| v.columns().get(r, c)).sum::<f64>())
        .collect();
    match simplex::nonnegative_solution(v.columns(), &minus_sum)? {
        Feasibility::Infeasible => Err(Error::NotPositivelySpanning),
        Feasibility::Feasible(mu) => {
            let coefficients: Vec<f64> = mu.iter().map(|m| 1.0 + m).collect();
            let zero = vec![0.0; n];
            let residual = simplex::residual_inf(v.columns(), &coefficients, &zero);
            if residual > tol::FEASIBILITY {
                return Err(Error::Internal(format!(
                    "positive-combination witness residual {residual:.3e} out of tolerance"
                )));
            }
            Ok(PssCertificate {
                coefficients,
                residual,
            })
        }
    }
}

/// True iff no column is a nonnegative combination of the others.
pub fn positive_independent(v: &VectorSet) -> bool {
    let s = v.s();
    if s == 1 {
        return true;
    }
    let all: Vec<usize> = (0..s).collect();
    for i in 0..s {
        let others: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
        let sub = v.columns().take_columns(&others);
        let target = v.column(i).to_vec();
        match simplex::nonnegative_solution(&sub, &target) {
            Ok(Feasibility::Feasible(_)) => return false,
            Ok(Feasibility::Infeasible) => {}
            Err(_) => return false,
        }
    }
    true
}

/// How a validated set sits in the positive-basis taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    MinimalPositiveBasis,
    MaximalPositiveBasis,
    IntermediatePositiveBasis,
    PositiveSpanningSet,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::MinimalPositiveBasis => "MinimalPositiveBasis",
            Classification::MaximalPositiveBasis => "MaximalPositiveBasis",
            Classification::IntermediatePositiveBasis => "IntermediatePositiveBasis",
            Classification::PositiveSpanningSet => "PositiveSpanningSet",
        };
        f.write_str(s)
    }
}

/// A validated positive spanning set: unit columns, precomputed Gram
/// matrix, classification tag, and the spanning certificate.
#[derive(Debug, Clone)]
pub struct SpanSet {
    base: VectorSet,
    gram_full: Matrix,
    classification: Classification,
    positively_independent: bool,
    certificate: PssCertificate,
}

impl SpanSet {
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn s(&self) -> usize {
        self.base.s()
    }

    /// The normalized set.
    pub fn base(&self) -> &VectorSet {
        &self.base
    }

    pub fn unit_columns(&self) -> &Matrix {
        self.base.columns()
    }

    /// Precomputed s x s Gram matrix of the unit columns.
    pub fn gram_full(&self) -> &Matrix {
        &self.gram_full
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn positively_independent(&self) -> bool {
        self.positively_independent
    }

    pub fn certificate(&self) -> &PssCertificate {
        &self.certificate
    }
}

/// Normalize, validate, and classify a vector set.
///
/// For n = 1 a two-element positive basis is simultaneously minimal and
/// maximal (n+1 = 2n = 2); it is tagged minimal.
pub fn classify(v: &VectorSet) -> Result<SpanSet> {
    let base = normalize(v)?;
    let certificate = validate_pss(&base)?;
    let independent = positive_independent(&base);
    let n = base.n();
    let s = base.s();
    let classification = if independent && s == n + 1 {
        Classification::MinimalPositiveBasis
    } else if independent && s == 2 * n {
        Classification::MaximalPositiveBasis
    } else if independent && s > n + 1 && s < 2 * n {
        Classification::IntermediatePositiveBasis
    } else {
        Classification::PositiveSpanningSet
    };
    let gram_full = base.columns().gram();
    Ok(SpanSet {
        base,
        gram_full,
        classification,
        positively_independent: independent,
        certificate,
    })
}

/// Minimal positive basis (e_1, ..., e_n, -(1,...,1)/sqrt(n)).
pub fn gen_minimal(n: usize) -> VectorSet {
    assert!(n >= 1);
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut c = vec![0.0; n];
        c[i] = 1.0;
        cols.push(c);
    }
    cols.push(vec![-1.0 / (n as f64).sqrt(); n]);
    VectorSet::from_columns(&cols).expect("construction is finite")
}

/// Maximal positive basis [d_1 ... d_n, -delta_1 d_1 ... -delta_n d_n].
///
/// `basis` defaults to the identity and `deltas` to all ones. The basis is
/// rank-checked on its normalized columns; deltas must be strictly
/// positive. Columns are emitted unscaled; classification normalizes.
pub fn gen_maximal(n: usize, basis: Option<&Matrix>, deltas: Option<&[f64]>) -> Result<VectorSet> {
    assert!(n >= 1);
    let identity = Matrix::identity(n);
    let basis = basis.unwrap_or(&identity);
    if basis.rows() != n || basis.cols() != n {
        return Err(Error::Parse(format!(
            "basis must be {n}x{n}, got {}x{}",
            basis.rows(),
            basis.cols()
        )));
    }
    let default_deltas = vec![1.0; n];
    let deltas = deltas.unwrap_or(&default_deltas);
    if deltas.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} deltas, got {}",
            deltas.len()
        )));
    }
    if let Some((i, &d)) = deltas
        .iter()
        .enumerate()
        .find(|(_, &d)| d <= 0.0 || !d.is_finite())
    {
        return Err(Error::NonPositiveDelta { index: i, value: d });
    }
    let unit = normalize(&VectorSet::new(basis.clone()))?;
    let cert = linalg::rank_certify(unit.columns());
    if !cert.full_rank {
        return Err(Error::Singular {
            min_abs_pivot: cert.min_abs_pivot,
        });
    }
    let mut cols: Vec<Vec<f64>> = (0..n).map(|i| basis.column(i).to_vec()).collect();
    for (i, &delta) in deltas.iter().enumerate() {
        // + 0.0 keeps zero entries from turning into -0.0.
        cols.push(basis.column(i).iter().map(|x| -delta * x + 0.0).collect());
    }
    VectorSet::from_columns(&cols)
}

/// Bundled 3x5 intermediate positive basis used as the worked reference
/// fixture: identity columns plus (-0.8, 0, -0.6) and (0, -0.9, -sqrt(0.19)).
/// All five columns are unit vectors.
pub fn paper_example() -> VectorSet {
    let s19 = 0.19f64.sqrt();
    VectorSet::from_columns(&[
        vec![1.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
        vec![-0.8, 0.0, -0.6],
        vec![0.0, -0.9, -s19],
    ])
    .expect("fixture is finite")
}
