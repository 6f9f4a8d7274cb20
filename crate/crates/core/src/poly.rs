//! Dense complex polynomials in ascending coefficient order.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A nonzero polynomial `sum_j a_j z^j`.
///
/// `coeffs[j]` is `a_j`. The leading coefficient is always nonzero; trailing
/// zeros are trimmed at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == ZERO {
            coeffs.pop();
        }
        if coeffs[coeffs.len() - 1] == ZERO {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    /// Builds a real-coefficient polynomial from ascending coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Builds the monic polynomial `z^n + lower[n-1] z^(n-1) + ... + lower[0]`
    /// where `n = lower.len()`.
    pub fn monic(lower: &[Complex64]) -> Result<Self> {
        let mut coeffs = lower.to_vec();
        coeffs.push(ONE);
        Self::new(coeffs)
    }

    /// `prod_k (z - roots[k])`, built by repeated multiplication by a linear
    /// factor. The result is monic with leading coefficient exactly one.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyRoots);
        }
        if let Some(index) = roots.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        let mut coeffs = Vec::with_capacity(roots.len() + 1);
        coeffs.push(ONE);
        for &r in roots {
            coeffs.push(ONE);
            for j in (1..coeffs.len() - 1).rev() {
                coeffs[j] = coeffs[j - 1] - r * coeffs[j];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Ok(Self { coeffs })
    }

    /// `(z - a)^n`.
    pub fn power_of_linear(a: Complex64, n: usize) -> Result<Self> {
        Self::from_roots(&vec![a; n])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    /// Exact test: the leading coefficient is bit-for-bit one.
    pub fn is_monic(&self) -> bool {
        self.leading() == ONE
    }

    /// Divides through by the leading coefficient and pins it to exactly one.
    pub fn to_monic(&self) -> Self {
        let lead = self.leading();
        let n = self.degree();
        let mut coeffs: Vec<Complex64> = self.coeffs.iter().map(|&c| c / lead).collect();
        coeffs[n] = ONE;
        Self { coeffs }
    }

    pub fn scale(&self, s: Complex64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `B(p, z) = sum_j |a_j| |z|^j`, the magnitude bound used to scale residuals.
    pub fn magnitude_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Value and magnitude bound in one pass.
    pub fn evaluate_with_bound(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold((ZERO, 0.0), |(v, b), &c| (v * z + c, b * r + c.norm()))
    }

    /// `|p(z)| / B(p, z)`, zero when the bound vanishes (then `p(z) = 0` too).
    pub fn scaled_residual(&self, z: Complex64) -> f64 {
        let (v, b) = self.evaluate_with_bound(z);
        if b == 0.0 {
            0.0
        } else {
            v.norm() / b
        }
    }

    /// The `k`-th derivative. Coefficient `j` of the result is
    /// `a_{j+k} (j+k)!/j!`.
    pub fn derivative(&self, k: usize) -> Result<Self> {
        let n = self.degree();
        if k > n {
            return Err(Error::DerivativeOrder { order: k, degree: n });
        }
        let coeffs = (0..=n - k)
            .map(|j| {
                let falling: f64 = ((j + 1)..=(j + k)).map(|m| m as f64).product();
                self.coeffs[j + k] * falling
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// `p(z + shift)` as a polynomial in `z` (Taylor shift by synthetic division).
    pub fn shifted(&self, shift: Complex64) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1] * shift;
                c[j] += t;
            }
        }
        Self { coeffs: c }
    }

    /// Composition `p(a z + b)`.
    pub fn compose_affine(&self, a: Complex64, b: Complex64) -> Result<Self> {
        let shifted = self.shifted(b);
        let mut pow = ONE;
        let coeffs = shifted
            .coeffs
            .iter()
            .map(|&c| {
                let v = c * pow;
                pow *= a;
                v
            })
            .collect();
        Self::new(coeffs)
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<Complex64>> for Polynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs)
    }
}

impl From<Polynomial> for Vec<Complex64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{j}")?,
            }
        }
        Ok(())
    }
}

/// Binomial coefficient `C(n, k)` as a float.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|m| m as f64).product()
}

/// Averaged elementary symmetric functions of the roots.
///
/// `c[k] = e_k(z_1..z_n) / C(n, k)`, so that
/// `p(z) = sum_k C(n,k) (-1)^k c_k z^(n-k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMeans {
    pub c: Vec<Complex64>,
}

/// `c_k = (-1)^k a_{n-k} / C(n, k)` for a monic `p`.
pub fn symmetric_means(p: &Polynomial) -> Result<SymmetricMeans> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    let a = p.coeffs();
    let c = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            a[n - k] * (sign / binomial(n, k))
        })
        .collect();
    Ok(SymmetricMeans { c })
}

/// Arithmetic mean of the roots of a monic `p`, read off as `-a_{n-1}/n`.
pub fn centroid(p: &Polynomial) -> Result<Complex64> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeTooLow { degree: 0, required: 1 });
    }
    Ok(-p.coeffs()[n - 1] / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(p: &Polynomial) -> Vec<f64> {
        p.coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn rejects_zero_and_empty() {
        assert_eq!(Polynomial::new(vec![]), Err(Error::EmptyCoefficients));
        assert_eq!(Polynomial::from_real(&[0.0, 0.0]), Err(Error::ZeroPolynomial));
        assert!(matches!(
            Polynomial::new(vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { index: 0 })
        ));
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn evaluate_examples() {
        let p = Polynomial::from_real(&[-3.0, -2.0, 1.0]).unwrap();
        assert_eq!(p.evaluate(c(3.0, 0.0)), c(0.0, 0.0));
        let cube = Polynomial::from_real(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(cube.evaluate(c(2.0, 0.0)), c(8.0, 0.0));
        let a = c(0.5, -1.25);
        let q = Polynomial::power_of_linear(a, 5).unwrap();
        assert!(q.evaluate(a).norm() <= 1e-14 * q.magnitude_bound(a));
        assert_eq!(p.magnitude_bound(c(3.0, 0.0)), 3.0 + 6.0 + 9.0);
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::from_real(&[0.0, 0.0, -1.0, 1.0]).unwrap();
        assert_eq!(real(&p.derivative(1).unwrap()), vec![0.0, -2.0, 3.0]);
        // p^(n-1) = n! z + (n-1)! a_{n-1}
        let q = Polynomial::from_real(&[4.0, -1.0, 7.0, 2.5, 1.0]).unwrap();
        assert_eq!(real(&q.derivative(3).unwrap()), vec![6.0 * 2.5, 24.0]);
        let r = Polynomial::power_of_linear(c(1.5, 2.0), 6).unwrap();
        let d = r.derivative(6).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.coeffs()[0], c(720.0, 0.0));
        assert_eq!(
            r.derivative(7),
            Err(Error::DerivativeOrder { order: 7, degree: 6 })
        );
    }

    #[test]
    fn from_roots_examples() {
        let p = Polynomial::from_roots(&[c(3.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(real(&p), vec![-3.0, -2.0, 1.0]);
        let q = Polynomial::from_roots(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        assert_eq!(real(&q), vec![-6.0, 11.0, -6.0, 1.0]);
        let r = Polynomial::power_of_linear(c(2.0, 0.0), 4).unwrap();
        assert_eq!(real(&r), vec![16.0, -32.0, 24.0, -8.0, 1.0]);
        assert!(r.is_monic());
        assert_eq!(Polynomial::from_roots(&[]), Err(Error::EmptyRoots));
    }

    #[test]
    fn symmetric_means_examples() {
        let p = Polynomial::from_real(&[-6.0, 11.0, -6.0, 1.0]).unwrap();
        let m = symmetric_means(&p).unwrap();
        let want = [1.0, 2.0, 11.0 / 3.0, 6.0];
        for (got, w) in m.c.iter().zip(want) {
            assert!((got - c(w, 0.0)).norm() < 1e-15);
        }
        let a = c(0.75, -0.5);
        let m = symmetric_means(&Polynomial::power_of_linear(a, 5).unwrap()).unwrap();
        for (k, ck) in m.c.iter().enumerate() {
            assert!((ck - a.powu(k as u32)).norm() < 1e-14);
        }
        let zn = Polynomial::from_real(&[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let m = symmetric_means(&zn).unwrap();
        assert_eq!(m.c[0], c(1.0, 0.0));
        assert!(m.c[1..].iter().all(|x| x.norm() == 0.0));
        let not_monic = Polynomial::from_real(&[1.0, 2.0]).unwrap();
        assert_eq!(symmetric_means(&not_monic), Err(Error::NotMonic));
    }

    #[test]
    fn centroid_examples() {
        let p = Polynomial::from_real(&[-3.0, -2.0, 1.0]).unwrap();
        assert_eq!(centroid(&p).unwrap(), c(1.0, 0.0));
        let a = c(-2.0, 3.0);
        let q = Polynomial::power_of_linear(a, 7).unwrap();
        assert!((centroid(&q).unwrap() - a).norm() < 1e-14);
        let r = Polynomial::from_real(&[1.0, -1.0, -1.0, 1.0]).unwrap();
        assert!((centroid(&r).unwrap() - c(1.0 / 3.0, 0.0)).norm() < 1e-16);
    }

    #[test]
    fn shift_and_affine_composition() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(-2.0, 1.0), c(0.5, 0.5)]).unwrap();
        let b = c(0.3, -0.7);
        let a = c(2.0, 1.0);
        let s = p.shifted(b);
        let q = p.compose_affine(a, b).unwrap();
        for z in [c(0.1, 0.2), c(-1.0, 3.0)] {
            assert!((s.evaluate(z) - p.evaluate(z + b)).norm() < 1e-12);
            assert!((q.evaluate(z) - p.evaluate(a * z + b)).norm() < 1e-12);
        }
    }
}
