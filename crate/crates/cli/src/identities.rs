//! Closed-form identities checked over seeded random inputs by `verify-identities`.

use calab_core::{
    centroid, iterated_integral, roots_of, solve_forward, symmetric_means, Complex64, NodeVector,
    Polynomial, Result, ToleranceProfile,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{IdentitiesReport, IdentityResult};

const BOX: f64 = 5.0;

fn sample(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-BOX..BOX), rng.gen_range(-BOX..BOX))
}

/// `||a - b||_inf / ||b||_inf`.
pub fn coeff_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(if a.len() == b.len() { 0.0 } else { f64::INFINITY }, f64::max);
    diff / scale
}

fn nodes(v: Vec<Complex64>) -> NodeVector {
    NodeVector::new(v).expect("nonempty finite nodes")
}

/// `(z - a)^n + n (a - b) (z - a)^(n-1)`.
pub fn second_proof_form(a: Complex64, b: Complex64, n: usize) -> Polynomial {
    let mut c = Polynomial::power_of_linear(a, n).expect("n >= 1").into_coeffs();
    let lower = Polynomial::power_of_linear(a, n - 1).expect("n >= 2");
    for (j, x) in lower.coeffs().iter().enumerate() {
        c[j] += x * (a - b) * n as f64;
    }
    Polynomial::new(c).expect("monic")
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    max_error: f64,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, cases: 0, max_error: 0.0 }
    }

    fn record(&mut self, err: f64) {
        self.cases += 1;
        if err.is_nan() || err > self.max_error {
            self.max_error = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn finish(self) -> IdentityResult {
        IdentityResult {
            name: self.name.into(),
            cases: self.cases,
            max_error: self.max_error,
            tolerance: self.tolerance,
            passed: self.max_error <= self.tolerance,
        }
    }
}

pub fn verify(seed: u64, tol: &ToleranceProfile) -> Result<IdentitiesReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    // p_2 = (z - alpha_2)^2 - (alpha_1 - alpha_2)^2.
    let mut t = Tally::new("quadratic_closed_form", 1e-12);
    for _ in 0..1000 {
        let (a1, a2) = (sample(&mut rng), sample(&mut rng));
        let p = solve_forward(&nodes(vec![a1, a2]));
        let want = [a2 * a2 - (a1 - a2) * (a1 - a2), -a2 * 2.0, Complex64::new(1.0, 0.0)];
        t.record(coeff_error(p.coeffs(), &want));
    }
    out.push(t.finish());

    // Nodes (a, ..., a, b) and the value p_n(b) = -(n-1)(b-a)^n.
    let mut form = Tally::new("second_proof_identity", 1e-10);
    let mut value = Tally::new("second_proof_root_value", 1e-9);
    for n in 2..=10 {
        for _ in 0..100 {
            let (a, b) = (sample(&mut rng), sample(&mut rng));
            let mut alpha = vec![a; n - 1];
            alpha.push(b);
            let p = solve_forward(&nodes(alpha));
            form.record(coeff_error(p.coeffs(), second_proof_form(a, b, n).coeffs()));
            let (v, bound) = p.evaluate_with_bound(b);
            let want = -(b - a).powu(n as u32) * (n - 1) as f64;
            value.record((v - want).norm() / want.norm().max(bound));
        }
    }
    out.push(form.finish());
    out.push(value.finish());

    // The root of p^(n-1) is -a_{n-1}/n, the mean of the roots.
    let mut t = Tally::new("centroid_identity", 1e-9);
    for i in 0..500 {
        let n = 1 + i % 10;
        let lower: Vec<Complex64> = (0..n).map(|_| sample(&mut rng)).collect();
        let p = Polynomial::monic(&lower)?;
        let last = p.derivative(n - 1)?;
        let node = -last.coeffs()[0] / last.coeffs()[1];
        let want = centroid(&p)?;
        let mean = roots_of(&p, tol)?.mean();
        let scale = 1.0 + want.norm();
        t.record((node - want).norm().max((mean - want).norm()) / scale);
    }
    out.push(t.finish());

    // c_k of p'/n equals c_k of p for k < n.
    let mut t = Tally::new("symmetric_means_invariance", 1e-12);
    for i in 0..500 {
        let n = 2 + i % 9;
        let lower: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-20i32..=20) as f64, rng.gen_range(-20i32..=20) as f64))
            .collect();
        let p = Polynomial::monic(&lower)?;
        let q = p.derivative(1)?.to_monic();
        let (mp, mq) = (symmetric_means(&p)?, symmetric_means(&q)?);
        let err = (0..n)
            .map(|k| {
                let d = (mp.c[k] - mq.c[k]).norm();
                if d == 0.0 { 0.0 } else { d / mp.c[k].norm() }
            })
            .fold(0.0, f64::max);
        t.record(err);
    }
    out.push(t.finish());

    // Back substitution and iterated integration agree.
    let mut t = Tally::new("solver_equivalence", 1e-10);
    for n in 1..=10 {
        for _ in 0..500 {
            let alpha = nodes((0..n).map(|_| sample(&mut rng)).collect());
            t.record(coeff_error(iterated_integral(&alpha).coeffs(), solve_forward(&alpha).coeffs()));
        }
    }
    out.push(t.finish());

    let all_passed = out.iter().all(|r| r.passed);
    Ok(IdentitiesReport { seed, identities: out, all_passed })
}
