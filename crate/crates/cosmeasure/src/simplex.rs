//! Phase-1 simplex feasibility for `A x = b, x >= 0`.
//!
//! Dense tableau with Bland's rule, which cannot cycle, so termination is
//! guaranteed without perturbation tricks. Problems here are tiny (rows =
//! ambient dimension, columns = set size), so no factorization updates.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::tol;

/// Entering/leaving pivot magnitudes below this are treated as zero.
const PIVOT_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// A nonnegative solution of `A x = b`.
    Feasible(Vec<f64>),
    Infeasible,
}

/// Decide whether `A x = b` admits `x >= 0`, returning a witness if so.
///
/// Feasible means the phase-1 objective (sum of artificials) reaches zero
/// within [`tol::FEASIBILITY`] and the witness residual stays within the
/// same bound.
pub fn nonnegative_solution(a: &Matrix, b: &[f64]) -> Result<Feasibility> {
    let m = a.rows();
    let k = a.cols();
    assert_eq!(b.len(), m);

    // Tableau: k structural columns, m artificials, rhs. Rows flipped so
    // rhs >= 0; artificials start as the basis.
    let cols = k + m + 1;
    let rhs_col = k + m;
    let mut t = vec![vec![0.0f64; cols]; m];
    for r in 0..m {
        let flip = if b[r] < 0.0 { -1.0 } else { 1.0 };
        for (c, v) in t[r].iter_mut().enumerate().take(k) {
            *v = flip * a.get(r, c);
        }
        t[r][k + r] = 1.0;
        t[r][rhs_col] = flip * b[r];
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    // Reduced-cost row for min sum(artificials): z_j - c_j starts as the
    // column sums over structural columns, objective as sum of rhs.
    let mut red = vec![0.0f64; k + m];
    for (c, rc) in red.iter_mut().enumerate().take(k) {
        *rc = (0..m).map(|r| t[r][c]).sum();
    }
    let mut obj: f64 = (0..m).map(|r| t[r][rhs_col]).sum();

    let max_iters = 200 * (k + m + 1) * (m + 1);
    for _ in 0..max_iters {
        // Bland: smallest index with positive reduced cost enters.
        let entering = (0..k + m).find(|&c| red[c] > PIVOT_TOL);
        let Some(e) = entering else {
            break;
        };
        // Ratio test; ties broken by smallest basic variable index.
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            if t[r][e] > PIVOT_TOL {
                let ratio = t[r][rhs_col] / t[r][e];
                match leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - PIVOT_TOL
                            || ((ratio - lratio).abs() <= PIVOT_TOL && basis[r] < basis[lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((lr, _)) = leave else {
            // Unbounded cannot happen in phase 1; treat as numerically stuck.
            return Err(Error::Internal("phase-1 simplex lost boundedness".into()));
        };

        // Pivot on (lr, e).
        let piv = t[lr][e];
        for v in t[lr].iter_mut() {
            *v /= piv;
        }
        let pivot_row = t[lr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != lr && row[e] != 0.0 {
                let f = row[e];
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
        let f = red[e];
        for (v, p) in red.iter_mut().zip(&pivot_row) {
            *v -= f * p;
        }
        obj -= f * pivot_row[rhs_col];
        basis[lr] = e;
    }

    if obj.abs() > tol::FEASIBILITY {
        return Ok(Feasibility::Infeasible);
    }

    let mut x = vec![0.0f64; k];
    for r in 0..m {
        if basis[r] < k {
            x[basis[r]] = t[r][rhs_col].max(0.0);
        } else if t[r][rhs_col] > tol::FEASIBILITY {
            // Artificial stuck in the basis at a meaningful level.
            return Ok(Feasibility::Infeasible);
        }
    }
    // Verify the witness independently of the tableau arithmetic.
    let residual = residual_inf(a, &x, b);
    if residual > tol::FEASIBILITY {
        return Ok(Feasibility::Infeasible);
    }
    Ok(Feasibility::Feasible(x))
}

/// Max-norm residual of `A x - b`.
pub fn residual_inf(a: &Matrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.mat_vec(x, false);
    ax.iter()
        .zip(b)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}
