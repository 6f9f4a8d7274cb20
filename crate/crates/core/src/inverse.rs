//! The inverse problem: given `p`, find every node vector `alpha` with
//! `p^(k)(alpha_{k+1}) = 0`. Admissible values of `alpha_{k+1}` are exactly the
//! roots of `p^(k)`, so the solution set is a Cartesian product of derivative
//! root sets.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::birkhoff::NodeVector;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::{roots_of, RootSet, ToleranceProfile};

/// `10!`.
pub const DEFAULT_ENUMERATION_CAP: u128 = 3_628_800;

/// Level `k` holds the roots of `p^(k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeLevels {
    pub polynomial: Polynomial,
    pub levels: Vec<RootSet>,
}

impl NodeLevels {
    pub fn degree(&self) -> usize {
        self.polynomial.degree()
    }

    /// Number of assignments with repeated roots expanded by multiplicity.
    pub fn raw_count(&self) -> u128 {
        self.levels.iter().map(|l| l.total_multiplicity as u128).product()
    }

    /// Number of assignments after merging equal cluster labels.
    pub fn distinct_count(&self) -> u128 {
        self.levels.iter().map(|l| l.len() as u128).product()
    }

    /// Per-level multiset equality within `radius`.
    pub fn matches(&self, other: &NodeLevels, radius: f64) -> bool {
        self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a.matches(b, radius))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeAssignment {
    pub alpha: NodeVector,
    /// `|p^(k)(alpha_{k+1})|` for each level.
    pub residuals: Vec<f64>,
}

pub fn node_levels(p: &Polynomial, tol: &ToleranceProfile) -> Result<NodeLevels> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeTooLow { degree: 0, required: 1 });
    }
    let levels = (0..n)
        .map(|k| roots_of(&p.derivative(k)?, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(NodeLevels { polynomial: p.clone(), levels })
}

/// Lazy Cartesian product over the multiplicity-expanded levels, odometer
/// order with the last level varying fastest.
pub struct Assignments<'a> {
    levels: &'a NodeLevels,
    derivatives: Vec<Polynomial>,
    choices: Vec<Vec<Complex64>>,
    index: Vec<usize>,
    finished: bool,
}

impl Assignments<'_> {
    pub fn raw_count(&self) -> u128 {
        self.levels.raw_count()
    }

    pub fn distinct_count(&self) -> u128 {
        self.levels.distinct_count()
    }
}

impl Iterator for Assignments<'_> {
    type Item = NodeAssignment;

    fn next(&mut self) -> Option<NodeAssignment> {
        if self.finished {
            return None;
        }
        let alpha: Vec<Complex64> = self.index.iter().zip(&self.choices).map(|(&i, c)| c[i]).collect();
        let residuals = alpha
            .iter()
            .zip(&self.derivatives)
            .map(|(&a, d)| d.evaluate(a).norm())
            .collect();
        // Advance the odometer.
        let mut pos = self.index.len();
        loop {
            if pos == 0 {
                self.finished = true;
                break;
            }
            pos -= 1;
            self.index[pos] += 1;
            if self.index[pos] < self.choices[pos].len() {
                break;
            }
            self.index[pos] = 0;
        }
        Some(NodeAssignment {
            alpha: NodeVector::new(alpha).expect("levels are nonempty"),
            residuals,
        })
    }
}

/// Streams all `n!` multiplicity-expanded assignments. Fails up front when the
/// count exceeds `cap`.
pub fn enumerate_assignments(levels: &NodeLevels, cap: u128) -> Result<Assignments<'_>> {
    let count = levels.raw_count();
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    let derivatives = (0..levels.degree())
        .map(|k| levels.polynomial.derivative(k))
        .collect::<Result<Vec<_>>>()?;
    let choices: Vec<Vec<Complex64>> = levels.levels.iter().map(RootSet::expanded).collect();
    Ok(Assignments {
        levels,
        derivatives,
        index: vec![0; choices.len()],
        finished: choices.iter().any(Vec::is_empty),
        choices,
    })
}

/// Multiset equality of `{alpha_1..alpha_n}` with the roots of `p`, by greedy
/// nearest matching within the cluster radius.
pub fn assignment_matches_roots(
    p: &Polynomial,
    assignment: &NodeAssignment,
    tol: &ToleranceProfile,
) -> Result<bool> {
    let n = p.degree();
    if assignment.alpha.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: assignment.alpha.len() });
    }
    let roots = roots_of(p, tol)?;
    let mut pool = roots.expanded();
    for &a in assignment.alpha.nodes() {
        let nearest = pool
            .iter()
            .enumerate()
            .map(|(i, r)| (i, (r - a).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match nearest {
            Some((i, d)) if d <= roots.radius => {
                pool.swap_remove(i);
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}
