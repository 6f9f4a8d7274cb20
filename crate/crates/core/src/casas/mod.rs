//! The Casas-Alvero condition: a monic degree-`n` polynomial shares a root with
//! each derivative `p^(k)`, `k = 1..n-1`.
//!
//! Exact gcd tests are replaced by the equivalent interpolation form: some root
//! `z` of `p` nearly annihilates `p^(k)`, measured against `B(p^(k), z)`.
//! Common roots of `p^(k)` that are not roots of `p` do not count.

mod search;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{factorial, Polynomial};
use crate::roots::{roots_of, ToleranceProfile};

pub use search::{ca_search, pattern_search, SearchConfig, SearchResult};

/// Best root of `p` against one derivative order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderRecord {
    pub k: usize,
    pub best_root: Complex64,
    /// `|p^(k)(best_root)|`.
    pub residual: f64,
    /// `|p^(k)(best_root)| / B(p^(k), best_root)`.
    pub scaled_residual: f64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CAReport {
    pub degree: usize,
    pub per_order: Vec<OrderRecord>,
    pub verdict: bool,
    /// `(z_1, ..., z_n)` with `p(z_k) = 0` and `p^(k)(z_{k+1}) = 0`; present iff `verdict`.
    pub witness: Option<Vec<Complex64>>,
}

impl CAReport {
    /// Orders at which no root of `p` annihilates the derivative.
    pub fn failing_orders(&self) -> Vec<usize> {
        self.per_order.iter().filter(|r| !r.passes).map(|r| r.k).collect()
    }
}

/// Checks every order `k = 1..n-1` against the root clusters of `p`.
///
/// Order `k` passes when `|p^(k)(z)| <= abs_tol * n! + rel_tol * B(p^(k), z)`
/// at some root; the absolute part scales with `n!` because derivative
/// coefficients grow factorially.
pub fn ca_check(p: &Polynomial, tol: &ToleranceProfile) -> Result<CAReport> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeTooLow { degree: 0, required: 1 });
    }
    let roots = roots_of(p, tol)?;
    let reps: Vec<Complex64> = roots.representatives().collect();
    let abs_floor = tol.abs_tol * factorial(n);

    let mut per_order = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let d = p.derivative(k)?;
        // Rank roots by the residual relative to its own acceptance
        // threshold; a bare scaled residual degenerates at z = 0.
        let (best_root, residual, scaled, ratio) = reps
            .iter()
            .map(|&z| {
                let (v, b) = d.evaluate_with_bound(z);
                let r = v.norm();
                let limit = abs_floor + tol.rel_tol * b;
                let ratio = if r == 0.0 { 0.0 } else { r / limit };
                (z, r, if b == 0.0 { 0.0 } else { r / b }, ratio)
            })
            .min_by(|a, b| a.3.total_cmp(&b.3).then(a.1.total_cmp(&b.1)))
            .expect("at least one root");
        per_order.push(OrderRecord {
            k,
            best_root,
            residual,
            scaled_residual: scaled,
            passes: ratio <= 1.0,
        });
    }
    let verdict = per_order.iter().all(|r| r.passes);
    let witness = verdict.then(|| {
        std::iter::once(reps[0])
            .chain(per_order.iter().map(|r| r.best_root))
            .collect()
    });
    Ok(CAReport { degree: n, per_order, verdict, witness })
}

/// The `(z_1, ..., z_n)` labelling when `p` passes [`ca_check`], after
/// confirming every entry is a root of `p`.
pub fn theorem1_witness(p: &Polynomial, tol: &ToleranceProfile) -> Result<Option<Vec<Complex64>>> {
    let report = ca_check(p, tol)?;
    Ok(report.witness.filter(|w| w.iter().all(|&z| tol.accepts(p, z))))
}

/// `sum_{k=1}^{n-1} min_i (|p^(k)(z_i)| / B(p^(k), z_i))^2` for `p = prod (z - z_i)`.
///
/// Zero exactly when some listed root annihilates every derivative order.
/// Terms with a vanishing bound contribute zero (the derivative vanishes there).
pub fn ca_defect(roots: &[Complex64]) -> Result<f64> {
    let p = Polynomial::from_roots(roots)?;
    let n = p.degree();
    let mut total = 0.0;
    for k in 1..n {
        let d = p.derivative(k)?;
        let best = roots
            .iter()
            .map(|&z| d.scaled_residual(z).powi(2))
            .fold(f64::INFINITY, f64::min);
        total += best;
    }
    Ok(total)
}
