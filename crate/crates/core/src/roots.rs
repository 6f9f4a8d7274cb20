//! Simultaneous root finding (Aberth-Ehrlich) with multiplicity clustering.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-14;
/// Angle offset of the initial circle, irrational relative to `2 pi / n`.
const START_ANGLE: f64 = 0.4;
/// Slack factor on the predicted perturbation radius of a multiple root.
const SPREAD_SLACK: f64 = 4.0;
/// Scaled residual every derivative below the multiplicity must meet at a
/// merged cluster's representative.
const MERGE_RESIDUAL: f64 = 1e-9;

/// Residual and clustering tolerances.
///
/// A value `z` counts as a root of `p` when `|p(z)| <= abs_tol + rel_tol * B(p, z)`.
/// `cluster_radius` is relative: iterates closer than
/// `cluster_radius * (1 + max |root|)` always share a cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub cluster_radius: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, cluster_radius: 1e-7 }
    }
}

impl ToleranceProfile {
    pub fn new(abs_tol: f64, rel_tol: f64, cluster_radius: f64) -> Result<Self> {
        let t = Self { abs_tol, rel_tol, cluster_radius };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.abs_tol, "abs_tol must be finite and >= 0"),
            (self.rel_tol, "rel_tol must be finite and >= 0"),
            (self.cluster_radius, "cluster_radius must be finite and >= 0"),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidTolerance(name));
            }
        }
        Ok(())
    }

    /// Residual threshold `abs_tol + rel_tol * bound`.
    pub fn threshold(&self, bound: f64) -> f64 {
        self.abs_tol + self.rel_tol * bound
    }

    pub fn accepts(&self, p: &Polynomial, z: Complex64) -> bool {
        let (v, b) = p.evaluate_with_bound(z);
        v.norm() <= self.threshold(b)
    }

    /// Absolute clustering radius for a root set whose largest magnitude is `max_abs`.
    pub fn radius_for(&self, max_abs: f64) -> f64 {
        self.cluster_radius * (1.0 + max_abs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub representative: Complex64,
    pub multiplicity: usize,
}

/// Roots of a polynomial grouped into clusters with multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub clusters: Vec<Cluster>,
    pub total_multiplicity: usize,
    /// Absolute radius below which iterates were unconditionally merged.
    pub radius: f64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.clusters.iter().map(|c| c.representative)
    }

    /// Representatives repeated by multiplicity, in cluster order.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.representative, c.multiplicity))
            .collect()
    }

    /// Multiplicity-weighted mean of the roots.
    pub fn mean(&self) -> Complex64 {
        let sum: Complex64 = self
            .clusters
            .iter()
            .map(|c| c.representative * c.multiplicity as f64)
            .sum();
        sum / self.total_multiplicity as f64
    }

    /// Multiset equality under a matching radius: each cluster of `self` must
    /// pair with a cluster of `other` of equal multiplicity closer than `radius`.
    pub fn matches(&self, other: &RootSet, radius: f64) -> bool {
        if self.total_multiplicity != other.total_multiplicity || self.len() != other.len() {
            return false;
        }
        let mut used = vec![false; other.len()];
        for a in &self.clusters {
            let best = other
                .clusters
                .iter()
                .enumerate()
                .filter(|(i, b)| !used[*i] && b.multiplicity == a.multiplicity)
                .map(|(i, b)| (i, (b.representative - a.representative).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1));
            match best {
                Some((i, d)) if d <= radius => used[i] = true,
                _ => return false,
            }
        }
        true
    }
}

/// All roots of `p` with multiplicity.
///
/// Every representative satisfies `|p(z)| <= abs_tol + rel_tol * B(p, z)`.
/// The result is deterministic for a fixed input and profile.
pub fn roots_of(p: &Polynomial, tol: &ToleranceProfile) -> Result<RootSet> {
    tol.validate()?;
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeTooLow { degree: 0, required: 1 });
    }
    let monic = p.to_monic();
    let iterates = if n == 1 {
        vec![-monic.coeffs()[0]]
    } else {
        aberth(&monic, tol)?
    };
    let max_abs = iterates.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = tol.radius_for(max_abs);
    let mut clusters = cluster(&monic, &iterates, radius);
    clusters.sort_by(|a, b| {
        a.representative
            .re
            .total_cmp(&b.representative.re)
            .then(a.representative.im.total_cmp(&b.representative.im))
    });
    if let Some(worst) = clusters
        .iter()
        .filter(|c| !tol.accepts(&monic, c.representative))
        .map(|c| monic.scaled_residual(c.representative))
        .reduce(f64::max)
    {
        return Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
            best: clusters.iter().map(|c| c.representative).collect(),
            residual: worst,
        });
    }
    Ok(RootSet { clusters, total_multiplicity: n, radius })
}

/// Fujiwara's bound on the root moduli of a monic polynomial.
fn fujiwara_bound(monic: &Polynomial) -> f64 {
    let a = monic.coeffs();
    let n = monic.degree();
    (1..=n)
        .map(|k| {
            let c = a[n - k].norm();
            let c = if k == n { c / 2.0 } else { c };
            c.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

/// Value, first derivative and magnitude bound by Horner.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let r = z.norm();
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    let mut b = 0.0;
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
        b = b * r + c.norm();
    }
    (v, d, b)
}

fn aberth(monic: &Polynomial, tol: &ToleranceProfile) -> Result<Vec<Complex64>> {
    let n = monic.degree();
    // Work around the centroid so clustered roots sit near the origin.
    let center = -monic.coeffs()[n - 1] / n as f64;
    let shifted = monic.shifted(center);
    let radius = fujiwara_bound(&shifted);
    if radius == 0.0 {
        return Ok(vec![center; n]);
    }
    let coeffs = shifted.coeffs();
    let noise = 8.0 * n as f64 * f64::EPSILON;
    let mut w: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(radius, TAU * i as f64 / n as f64 + START_ANGLE))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d, b) = eval_with_derivative(coeffs, w[i]);
            if v.norm() <= noise * b {
                done[i] = true;
                continue;
            }
            let mut sigma = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = w[i] - w[j];
                    if diff.norm() > 0.0 {
                        sigma += diff.inv();
                    }
                }
            }
            let newton = v / d;
            let mut step = newton / (Complex64::new(1.0, 0.0) - newton * sigma);
            if !(step.re.is_finite() && step.im.is_finite()) {
                // Stationary point or collision: nudge off it.
                step = Complex64::from_polar(radius * 1e-3, i as f64 + START_ANGLE);
            }
            w[i] -= step;
            if step.norm() <= STEP_TOL * (1.0 + (w[i] + center).norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(w.into_iter().map(|x| x + center).collect());
        }
    }
    let z: Vec<Complex64> = w.into_iter().map(|x| x + center).collect();
    let worst = z
        .iter()
        .filter(|&&zi| !tol.accepts(monic, zi))
        .map(|&zi| monic.scaled_residual(zi))
        .reduce(f64::max);
    match worst {
        None => Ok(z),
        Some(residual) => Err(Error::NoConvergence { iterations: MAX_ITERATIONS, best: z, residual }),
    }
}

/// Groups iterates into clusters.
///
/// Iterates within `radius` are joined unconditionally. Larger groups along the
/// single-linkage tree are accepted as one multiple root when their spread is
/// consistent with the perturbation radius of an `m`-fold root and the
/// refined representative annihilates `p, p', ..., p^(m-1)`.
fn cluster(p: &Polynomial, z: &[Complex64], radius: f64) -> Vec<Cluster> {
    let n = z.len();
    // Minimum spanning tree edges by Prim's algorithm (n is small).
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    in_tree[0] = true;
    for j in 1..n {
        best[j] = ((z[j] - z[0]).norm(), 0);
    }
    for _ in 1..n {
        let (k, _) = (0..n)
            .filter(|&j| !in_tree[j])
            .map(|j| (j, best[j].0))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("remaining vertex");
        in_tree[k] = true;
        edges.push((best[k].0, best[k].1, k));
        for j in 0..n {
            if !in_tree[j] {
                let d = (z[j] - z[k]).norm();
                if d < best[j].0 {
                    best[j] = (d, k);
                }
            }
        }
    }

    let mut out = Vec::new();
    split(p, z, (0..n).collect(), &edges, radius, &mut out);
    out
}

fn split(
    p: &Polynomial,
    z: &[Complex64],
    members: Vec<usize>,
    edges: &[(f64, usize, usize)],
    radius: f64,
    out: &mut Vec<Cluster>,
) {
    let local: Vec<(f64, usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(_, a, b)| members.contains(&a) && members.contains(&b))
        .collect();
    let longest = local.iter().map(|e| e.0).fold(0.0, f64::max);
    if members.len() == 1 || longest <= radius {
        let mean = mean_of(z, &members);
        let rep = if members.len() == 1 {
            mean
        } else {
            refine(p, mean, members.len())
                .filter(|r| (r - mean).norm() <= radius)
                .unwrap_or(mean)
        };
        out.push(Cluster { representative: rep, multiplicity: members.len() });
        return;
    }
    if let Some(rep) = accept_multiple(p, z, &members) {
        out.push(Cluster { representative: rep, multiplicity: members.len() });
        return;
    }
    // Cut the longest edge and recurse on the two components.
    let cut = local
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .map(|(i, _)| i)
        .expect("nonempty edge set");
    let mut component = vec![members[0]];
    let mut frontier = vec![members[0]];
    while let Some(v) = frontier.pop() {
        for (i, &(_, a, b)) in local.iter().enumerate() {
            if i == cut {
                continue;
            }
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !component.contains(&other) {
                component.push(other);
                frontier.push(other);
            }
        }
    }
    let rest: Vec<usize> = members.iter().copied().filter(|m| !component.contains(m)).collect();
    component.sort_unstable();
    split(p, z, component, edges, radius, out);
    split(p, z, rest, edges, radius, out);
}

fn mean_of(z: &[Complex64], members: &[usize]) -> Complex64 {
    members.iter().map(|&i| z[i]).sum::<Complex64>() / members.len() as f64
}

/// Newton iteration on `p^(m-1)`, whose root is simple at an exact `m`-fold root of `p`.
fn refine(p: &Polynomial, start: Complex64, m: usize) -> Option<Complex64> {
    let g = p.derivative(m - 1).ok()?;
    let gp = p.derivative(m).ok()?;
    let mut x = start;
    for _ in 0..50 {
        let d = gp.evaluate(x);
        if d.norm() == 0.0 {
            break;
        }
        let step = g.evaluate(x) / d;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return None;
        }
        x -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + x.norm()) {
            break;
        }
    }
    Some(x)
}

fn accept_multiple(p: &Polynomial, z: &[Complex64], members: &[usize]) -> Option<Complex64> {
    let m = members.len();
    let n = p.degree();
    let mean = mean_of(z, members);
    let spread = members.iter().map(|&i| (z[i] - mean).norm()).fold(0.0, f64::max);
    // Predicted radius of an m-fold root under coefficient noise:
    // |delta|^m |p^(m)(a)/m!| ~ n eps B(p, a).
    let top = p.derivative(m).ok()?.evaluate(mean).norm() / crate::poly::factorial(m);
    if top == 0.0 {
        return None;
    }
    let noise = n as f64 * f64::EPSILON * p.magnitude_bound(mean);
    let predicted = (noise / top).powf(1.0 / m as f64);
    if spread > SPREAD_SLACK * predicted {
        return None;
    }
    let rep = refine(p, mean, m)?;
    if (rep - mean).norm() > spread + SPREAD_SLACK * predicted {
        return None;
    }
    for j in 0..m {
        let d = p.derivative(j).ok()?;
        if d.scaled_residual(rep) > MERGE_RESIDUAL {
            return None;
        }
    }
    Some(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_roots(p: &Polynomial, want: &[(Complex64, usize)], tol: f64) {
        let rs = roots_of(p, &ToleranceProfile::default()).unwrap();
        assert_eq!(rs.len(), want.len(), "clusters {:?}", rs.clusters);
        assert_eq!(rs.total_multiplicity, p.degree());
        for &(w, m) in want {
            assert!(
                rs.clusters.iter().any(|cl| cl.multiplicity == m && (cl.representative - w).norm() < tol),
                "missing {w}:{m} in {:?}",
                rs.clusters
            );
        }
    }

    #[test]
    fn quadratic() {
        let p = Polynomial::from_real(&[-3.0, -2.0, 1.0]).unwrap();
        assert_roots(&p, &[(c(3.0, 0.0), 1), (c(-1.0, 0.0), 1)], 1e-13);
    }

    #[test]
    fn triple_root() {
        let p = Polynomial::power_of_linear(c(2.0, 0.0), 3).unwrap();
        assert_roots(&p, &[(c(2.0, 0.0), 3)], 1e-12);
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert_roots(&p, &[(c(1.0, 0.0), 1), (c(-0.5, h), 1), (c(-0.5, -h), 1)], 1e-13);
    }

    #[test]
    fn mixed_multiplicities() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_roots(&p, &[(c(1.0, 0.0), 2), (c(-1.0, 0.0), 1)], 1e-10);
        let q = Polynomial::from_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_roots(&q, &[(c(0.0, 0.0), 2), (c(1.0, 0.0), 1)], 1e-10);
    }

    #[test]
    fn high_multiplicity_far_from_origin() {
        for n in [5, 8, 10] {
            let a = c(-712.5, 318.25);
            let p = Polynomial::power_of_linear(a, n).unwrap();
            assert_roots(&p, &[(a, n)], 1e-9 * a.norm());
        }
    }

    #[test]
    fn close_simple_roots_stay_apart() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(1.0 + 1e-5, 0.0), c(-2.0, 1.0)]).unwrap();
        assert_roots(&p, &[(c(1.0, 0.0), 1), (c(1.0 + 1e-5, 0.0), 1), (c(-2.0, 1.0), 1)], 1e-9);
    }

    #[test]
    fn constant_is_rejected() {
        let p = Polynomial::from_real(&[3.0]).unwrap();
        assert!(matches!(roots_of(&p, &ToleranceProfile::default()), Err(Error::DegreeTooLow { .. })));
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceProfile::new(1e-10, -1.0, 0.0).is_err());
        assert!(ToleranceProfile::new(f64::INFINITY, 0.0, 0.0).is_err());
        assert!(ToleranceProfile::new(0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn deterministic() {
        let p = Polynomial::from_roots(&[c(0.3, 1.0), c(-2.0, 0.1), c(4.0, -3.0), c(0.0, 0.0)]).unwrap();
        let tol = ToleranceProfile::default();
        assert_eq!(roots_of(&p, &tol).unwrap(), roots_of(&p, &tol).unwrap());
    }
}
