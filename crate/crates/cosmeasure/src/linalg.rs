//! Dense kernel for the small matrices this problem produces: Gram
//! construction, SPD solves, LU solves with optional transposition, and
//! pivot-based rank certification. Linear systems are solved directly;
//! no inverse is ever formed.

use crate::error::{Error, Result};
use crate::tol;

/// Dense column-major matrix; a column is one vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Build from column-major data. Rejects empty shapes and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "bad matrix shape {rows}x{cols} with {} entries",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::Parse(format!(
                "non-finite entry at row {}, column {}",
                pos % rows,
                pos / rows
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Build from a list of columns, each of equal length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Parse("columns have unequal lengths".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for c in columns {
            data.extend_from_slice(c);
        }
        Matrix::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[c * self.rows + r]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[c * self.rows + r] = v;
    }

    /// Contiguous view of one column.
    #[inline]
    pub fn column(&self, c: usize) -> &[f64] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// New matrix keeping the listed columns, in the given order.
    pub fn take_columns(&self, indices: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for &c in indices {
            data.extend_from_slice(self.column(c));
        }
        Matrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    /// `M v` or `M^T v`.
    pub fn mat_vec(&self, v: &[f64], transpose: bool) -> Vec<f64> {
        if transpose {
            assert_eq!(v.len(), self.rows);
            (0..self.cols).map(|c| dot(self.column(c), v)).collect()
        } else {
            assert_eq!(v.len(), self.cols);
            let mut out = vec![0.0; self.rows];
            for (c, vc) in v.iter().enumerate() {
                let col = self.column(c);
                for (o, x) in out.iter_mut().zip(col) {
                    *o += x * vc;
                }
            }
            out
        }
    }

    /// Gram matrix of the columns, symmetrized as (G + G^T)/2.
    pub fn gram(&self) -> Matrix {
        let s = self.cols;
        let mut g = Matrix::zeros(s, s);
        for i in 0..s {
            for j in i..s {
                let v = dot(self.column(i), self.column(j));
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        for i in 0..s {
            for j in (i + 1)..s {
                let avg = 0.5 * (g.get(i, j) + g.get(j, i));
                g.set(i, j, avg);
                g.set(j, i, avg);
            }
        }
        g
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Packed LU factorization with partial pivoting, P A = L U.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    /// L below the unit diagonal, U on and above, column-major.
    packed: Vec<f64>,
    /// Row i of the permuted matrix is row `perm[i]` of the input.
    perm: Vec<usize>,
    pub min_abs_pivot: f64,
    pub max_abs_pivot: f64,
}

impl LuFactors {
    /// Factor a square matrix. Total: singular inputs still factor, they
    /// just report a tiny pivot.
    pub fn compute(m: &Matrix) -> Self {
        assert_eq!(m.rows(), m.cols(), "LU requires a square matrix");
        let n = m.rows();
        let mut a = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_p = f64::INFINITY;
        let mut max_p = 0.0f64;

        for k in 0..n {
            let mut piv_row = k;
            let mut piv_val = a[k * n + k].abs();
            for r in (k + 1)..n {
                let v = a[k * n + r].abs();
                if v > piv_val {
                    piv_val = v;
                    piv_row = r;
                }
            }
            if piv_row != k {
                perm.swap(k, piv_row);
                for c in 0..n {
                    a.swap(c * n + k, c * n + piv_row);
                }
            }
            let pivot = a[k * n + k];
            min_p = min_p.min(pivot.abs());
            max_p = max_p.max(pivot.abs());
            if pivot != 0.0 {
                for r in (k + 1)..n {
                    let f = a[k * n + r] / pivot;
                    a[k * n + r] = f;
                    for c in (k + 1)..n {
                        a[c * n + r] -= f * a[c * n + k];
                    }
                }
            }
        }

        LuFactors {
            n,
            packed: a,
            perm,
            min_abs_pivot: min_p,
            max_abs_pivot: max_p,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.min_abs_pivot <= tol::RANK_PIVOT * self.max_abs_pivot
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.packed[c * self.n + r]
    }

    /// Solve `M x = rhs`, or `M^T x = rhs` when `transpose` is set.
    pub fn solve(&self, rhs: &[f64], transpose: bool) -> Result<Vec<f64>> {
        if self.is_singular() {
            return Err(Error::Singular {
                min_abs_pivot: self.min_abs_pivot,
            });
        }
        let n = self.n;
        assert_eq!(rhs.len(), n);
        if !transpose {
            // L y = P rhs, then U x = y.
            let mut x: Vec<f64> = (0..n).map(|i| rhs[self.perm[i]]).collect();
            for r in 1..n {
                for c in 0..r {
                    x[r] -= self.at(r, c) * x[c];
                }
            }
            for r in (0..n).rev() {
                for c in (r + 1)..n {
                    x[r] -= self.at(r, c) * x[c];
                }
                x[r] /= self.at(r, r);
            }
            Ok(x)
        } else {
            // M^T = U^T L^T P, so U^T z = rhs, L^T w = z, x = P^T w.
            let mut z = rhs.to_vec();
            for r in 0..n {
                for c in 0..r {
                    z[r] -= self.at(c, r) * z[c];
                }
                z[r] /= self.at(r, r);
            }
            for r in (0..n).rev() {
                for c in (r + 1)..n {
                    z[r] -= self.at(c, r) * z[c];
                }
            }
            let mut x = vec![0.0; n];
            for i in 0..n {
                x[self.perm[i]] = z[i];
            }
            Ok(x)
        }
    }

    /// Reassemble P^T L U; used by the factorization tests.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut v = 0.0;
                for k in 0..=r.min(c) {
                    let l = if r == k { 1.0 } else { self.at(r, k) };
                    v += l * self.at(k, c);
                }
                out.set(self.perm[r], c, v);
            }
        }
        out
    }
}

/// Solve `M x = rhs` (or `M^T x = rhs`) by partial-pivoting LU.
pub fn lu_solve(m: &Matrix, rhs: &[f64], transpose: bool) -> Result<Vec<f64>> {
    LuFactors::compute(m).solve(rhs, transpose)
}

/// Solve `G y = rhs` for symmetric positive definite `G` by Cholesky.
///
/// A diagonal pivot at or below [`tol::SPD_PIVOT`] means the candidate
/// subset is numerically rank-deficient.
pub fn spd_solve(g: &Matrix, rhs: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(g.rows(), g.cols(), "SPD solve requires a square matrix");
    let n = g.rows();
    assert_eq!(rhs.len(), n);
    // Lower Cholesky factor, column-major.
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = g.get(j, j);
        for k in 0..j {
            d -= l[k * n + j] * l[k * n + j];
        }
        if d < tol::SPD_PIVOT {
            return Err(Error::NotPositiveDefinite { step: j, pivot: d });
        }
        let dj = d.sqrt();
        l[j * n + j] = dj;
        for r in (j + 1)..n {
            let mut v = g.get(r, j);
            for k in 0..j {
                v -= l[k * n + r] * l[k * n + j];
            }
            l[j * n + r] = v / dj;
        }
    }
    // Forward then backward substitution.
    let mut y = rhs.to_vec();
    for r in 0..n {
        for c in 0..r {
            y[r] -= l[c * n + r] * y[c];
        }
        y[r] /= l[r * n + r];
    }
    for r in (0..n).rev() {
        for c in (r + 1)..n {
            y[r] -= l[r * n + c] * y[c];
        }
        y[r] /= l[r * n + r];
    }
    Ok(y)
}

/// Outcome of the basis test on an n x n candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankCertificate {
    pub full_rank: bool,
    pub min_abs_pivot: f64,
}

/// Decide whether a square matrix of unit columns has full rank.
///
/// Deterministic for identical input bits: the verdict is a pure function
/// of the LU pivots.
pub fn rank_certify(m: &Matrix) -> RankCertificate {
    let lu = LuFactors::compute(m);
    RankCertificate {
        full_rank: lu.min_abs_pivot > tol::RANK_PIVOT,
        min_abs_pivot: lu.min_abs_pivot,
    }
}

/// Rank of a rectangular matrix by row-pivoted elimination.
pub fn rank(m: &Matrix, pivot_tol: f64) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<f64>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let (piv_row, piv_val) = (rank..rows)
            .map(|r| (r, a[r][c].abs()))
            .fold((rank, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if piv_val <= pivot_tol {
            continue;
        }
        a.swap(rank, piv_row);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c] / pivot_row[c];
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v -= f * p;
            }
        }
        rank += 1;
    }
    rank
}
