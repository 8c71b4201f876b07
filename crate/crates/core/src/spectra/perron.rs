//! Power iteration for the Perron root of a nonnegative matrix.

use crate::error::{Error, Result};
use crate::repspaces::SparseOperator;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct PerronResult {
    pub radius: f64,
    /// Strictly positive, entries summing to one.
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// `max_i |(M v - ρ v)_i|`.
    pub residual: f64,
}

/// Spectral radius and Perron vector of an entrywise nonnegative irreducible
/// matrix. Iterates `M + σ` from the uniform vector and stops once the
/// Collatz-Wielandt bounds `min_i (Mv)_i / v_i <= ρ <= max_i (Mv)_i / v_i`
/// are within `tol` (relative to `max(1, ρ)`).
pub fn perron_extremal(m: &SparseOperator<f64>, tol: f64) -> Result<PerronResult> {
    perron_with_limit(m, tol, MAX_ITERATIONS)
}

pub fn perron_with_limit(
    m: &SparseOperator<f64>,
    tol: f64,
    max_iterations: usize,
) -> Result<PerronResult> {
    let n = m.rows();
    if n != m.cols() || n == 0 {
        return Err(Error::Shape(format!(
            "{}x{} is not a nonempty square matrix",
            n,
            m.cols()
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|i| m.row(i).iter().map(|(&j, &v)| (j, v)).collect())
        .collect();
    if let Some((i, j, v)) = m.entries().find(|(_, _, v)| **v < 0.0 || !v.is_finite()) {
        return Err(Error::Domain(format!(
            "entry ({i}, {j}) = {v} is not nonnegative"
        )));
    }
    let row_max = rows
        .iter()
        .map(|r| r.iter().map(|(_, v)| v).sum::<f64>())
        .fold(0.0f64, f64::max);
    let sigma = 0.5 * row_max + f64::MIN_POSITIVE;
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut width = f64::INFINITY;
    for it in 1..=max_iterations {
        for (i, r) in rows.iter().enumerate() {
            y[i] = sigma * x[i] + r.iter().map(|&(j, v)| v * x[j]).sum::<f64>();
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            if y[i].is_nan() || y[i] <= 0.0 {
                return Err(Error::Domain(format!(
                    "iterate lost positivity at index {i}; the matrix is reducible"
                )));
            }
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let total: f64 = y.iter().sum();
        for i in 0..n {
            x[i] = y[i] / total;
        }
        width = hi - lo;
        if width <= tol * hi.max(1.0) {
            let radius = 0.5 * (lo + hi) - sigma;
            let residual = rows
                .iter()
                .enumerate()
                .map(|(i, r)| (r.iter().map(|&(j, v)| v * x[j]).sum::<f64>() - radius * x[i]).abs())
                .fold(0.0, f64::max);
            return Ok(PerronResult {
                radius,
                vector: x,
                iterations: it,
                residual,
            });
        }
    }
    Err(Error::Convergence {
        iterations: max_iterations,
        width,
    })
}
