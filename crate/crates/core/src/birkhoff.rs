//! The forward interpolation problem: given nodes `alpha_1..alpha_n`, find the
//! monic degree-`n` polynomial with `p^(k)(alpha_{k+1}) = 0` for `k = 0..n-1`.
//!
//! Two independent constructions are provided. [`solve_forward`] back-substitutes
//! through the upper triangular system built by [`build_system`];
//! [`iterated_integral`] antidifferentiates `n` times from the constant one,
//! pinning a zero at each node on the way out.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::dd::ComplexDd;
use crate::poly::{binomial, factorial, Polynomial};

/// Ordered interpolation nodes `(alpha_1, ..., alpha_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct NodeVector(Vec<Complex64>);

impl NodeVector {
    pub fn new(nodes: Vec<Complex64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodes);
        }
        if let Some(index) = nodes.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(nodes))
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<Complex64>> for NodeVector {
    type Error = Error;

    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<NodeVector> for Vec<Complex64> {
    fn from(v: NodeVector) -> Self {
        v.0
    }
}

/// `A a = rhs` for the coefficient vector `a = (a_0, ..., a_n)`.
///
/// Row `k < n` holds `(j!/(j-k)!) alpha_{k+1}^(j-k)` in column `j >= k`; row `n`
/// is `(0, ..., 0, n!)` and fixes the leading coefficient to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffSystem {
    pub matrix: Vec<Vec<Complex64>>,
    pub rhs: Vec<Complex64>,
}

impl BirkhoffSystem {
    pub fn size(&self) -> usize {
        self.rhs.len()
    }
}

pub fn build_system(alpha: &NodeVector) -> BirkhoffSystem {
    let n = alpha.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut matrix = vec![vec![zero; n + 1]; n + 1];
    for (k, row) in matrix.iter_mut().enumerate().take(n) {
        let node = alpha.nodes()[k];
        let mut pow = Complex64::new(1.0, 0.0);
        for j in k..=n {
            let falling: f64 = ((j - k + 1)..=j).map(|m| m as f64).product();
            row[j] = pow * falling;
            pow *= node;
        }
    }
    let nf = factorial(n);
    matrix[n][n] = Complex64::new(nf, 0.0);
    let mut rhs = vec![zero; n + 1];
    rhs[n] = Complex64::new(nf, 0.0);
    BirkhoffSystem { matrix, rhs }
}

/// Unique monic solution by back substitution from the bottom row upward.
///
/// Row `k` of [`build_system`] divided by its diagonal `k!` reads
/// `a_k = -sum_{j>k} C(j, k) alpha_{k+1}^(j-k) a_j`. With coincident nodes the
/// terms exceed the result by up to `2^(n-k)`, so the sums are carried in
/// double-double and rounded once at the end.
pub fn solve_forward(alpha: &NodeVector) -> Polynomial {
    let n = alpha.len();
    let mut a = vec![ComplexDd::ZERO; n + 1];
    a[n] = ComplexDd::new(Complex64::new(1.0, 0.0));
    for k in (0..n).rev() {
        let node = ComplexDd::new(alpha.nodes()[k]);
        let mut acc = ComplexDd::ZERO;
        for j in ((k + 1)..=n).rev() {
            acc = acc.add(a[j].scale(binomial(j, k))).mul(node);
        }
        a[k] = acc.neg();
    }
    Polynomial::new(a.into_iter().map(ComplexDd::to_complex).collect()).expect("leading coefficient is one")
}

/// `n! * int_{alpha_1}^z dx_1 int_{alpha_2}^{x_1} dx_2 ... int_{alpha_n}^{x_{n-1}} dx_n`.
///
/// Each antiderivative is scaled by its new degree so every intermediate stays
/// monic; the scale factors multiply to `n!`.
pub fn iterated_integral(alpha: &NodeVector) -> Polynomial {
    let mut current = vec![Complex64::new(1.0, 0.0)];
    for &node in alpha.nodes().iter().rev() {
        let d = current.len();
        let mut next = Vec::with_capacity(d + 1);
        next.push(Complex64::new(0.0, 0.0));
        for (j, &c) in current.iter().enumerate() {
            next.push(c * (d as f64 / (j + 1) as f64));
        }
        let anchored = Polynomial::new(next.clone())
            .expect("leading coefficient is one")
            .evaluate(node);
        next[0] = -anchored;
        current = next;
    }
    Polynomial::new(current).expect("leading coefficient is one")
}

/// Residuals `|p^(k)(alpha_{k+1})|` together with their bounds `B(p^(k), alpha_{k+1})`.
pub fn condition_residuals(p: &Polynomial, alpha: &NodeVector) -> Result<Vec<(f64, f64)>> {
    if alpha.len() != p.degree() {
        return Err(Error::LengthMismatch { expected: p.degree(), actual: alpha.len() });
    }
    alpha
        .nodes()
        .iter()
        .enumerate()
        .map(|(k, &node)| {
            let (v, b) = p.derivative(k)?.evaluate_with_bound(node);
            Ok((v.norm(), b))
        })
        .collect()
}
