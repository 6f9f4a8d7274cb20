//! Solvability of the doubled-condition problem
//! `p(alpha_{k+1}) = p^(k)(alpha_{k+1}) = c_k`, `k = 0..n-1`, over polynomials
//! of degree `n` (not necessarily monic).
//!
//! The `k = 0` pair is one equation, so the system has `2n - 1` distinct rows
//! in `n + 1` unknowns.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::birkhoff::NodeVector;
use crate::error::{Error, Result};
use crate::linalg::{least_squares, max_abs, residual_norm};
use crate::poly::Polynomial;
use crate::roots::ToleranceProfile;

/// Relative rank threshold against the largest matrix entry.
pub const RANK_THRESHOLD: f64 = 1e-10;
/// A solution's leading coefficient below this (relative to its largest
/// coefficient) is reported as a degree drop.
pub const LEADING_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverdeterminedReport {
    pub distinct_equation_count: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub residual_norm: f64,
    /// Residual norm at or below which the system is called consistent.
    pub tolerance: f64,
    pub consistent: bool,
    /// Ascending coefficients of a particular solution; present iff consistent.
    /// When the solution family contains degree-`n` members one with leading
    /// coefficient one is chosen.
    pub solution: Option<Vec<Complex64>>,
    /// Basis of the homogeneous solutions (empty at full column rank).
    pub null_space: Vec<Vec<Complex64>>,
    /// The reported solution's leading coefficient vanishes.
    pub degenerate_degree: bool,
}

impl OverdeterminedReport {
    /// The solution as a polynomial, absent when inconsistent or identically zero.
    pub fn solution_polynomial(&self) -> Option<Polynomial> {
        self.solution.as_ref().and_then(|s| Polynomial::new(s.clone()).ok())
    }
}

/// Rows of the doubled-condition system and their right-hand sides.
pub fn build_rows(alpha: &NodeVector, c: &[Complex64]) -> Result<(Vec<Vec<Complex64>>, Vec<Complex64>)> {
    let n = alpha.len();
    if c.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: c.len() });
    }
    let mut rows = Vec::with_capacity(2 * n - 1);
    let mut rhs = Vec::with_capacity(2 * n - 1);
    for (k, (&node, &value)) in alpha.nodes().iter().zip(c).enumerate() {
        rows.push(derivative_row(node, 0, n));
        rhs.push(value);
        if k > 0 {
            rows.push(derivative_row(node, k, n));
            rhs.push(value);
        }
    }
    Ok((rows, rhs))
}

/// Row of `p^(k)(z)` in the coefficient unknowns `b_0..b_n`.
fn derivative_row(z: Complex64, k: usize, n: usize) -> Vec<Complex64> {
    let mut row = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut pow = Complex64::new(1.0, 0.0);
    for (j, entry) in row.iter_mut().enumerate().skip(k) {
        let falling: f64 = ((j - k + 1)..=j).map(|m| m as f64).product();
        *entry = pow * falling;
        pow *= z;
    }
    row
}

pub fn analyze_overdetermined(
    alpha: &NodeVector,
    c: &[Complex64],
    tol: &ToleranceProfile,
) -> Result<OverdeterminedReport> {
    tol.validate()?;
    let n = alpha.len();
    let (rows, rhs) = build_rows(alpha, c)?;
    let scale = max_abs(&rows);
    let ls = least_squares(&rows, &rhs, RANK_THRESHOLD * scale);

    let mut x = ls.solution;
    let inf = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Prefer a monic member of the solution family when one exists.
    if let Some(v) = ls
        .null_space
        .iter()
        .max_by(|a, b| a[n].norm().total_cmp(&b[n].norm()))
        .filter(|v| v[n].norm() > LEADING_THRESHOLD * inf(v))
    {
        let t = (Complex64::new(1.0, 0.0) - x[n]) / v[n];
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += t * vi;
        }
        x[n] = Complex64::new(1.0, 0.0);
    }

    let residual = residual_norm(&rows, &x, &rhs);
    let rhs_norm = rhs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let x_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tolerance = tol.threshold(rhs_norm + scale * x_norm);
    let consistent = residual <= tolerance;
    let degenerate_degree = x[n].norm() <= LEADING_THRESHOLD * inf(&x) || inf(&x) == 0.0;

    Ok(OverdeterminedReport {
        distinct_equation_count: rows.len(),
        unknowns: n + 1,
        rank: ls.rank,
        residual_norm: residual,
        tolerance,
        consistent,
        solution: consistent.then_some(x),
        null_space: ls.null_space,
        degenerate_degree,
    })
}
