use calab_core::birkhoff::condition_residuals;
use calab_core::overdetermined::build_rows;
use calab_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex_in(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

fn min_separation(s: &[Complex64]) -> f64 {
    let mut d = f64::INFINITY;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            d = d.min((s[i] - s[j]).norm());
        }
    }
    d
}

fn rel_close(a: &[Complex64], b: &[Complex64], rel: f64) -> bool {
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= rel * scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_round_trip(s in prop::collection::vec(complex_in(3.0), 1..=12)) {
        let tol = ToleranceProfile::default();
        let max_abs = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assume!(min_separation(&s) > 10.0 * tol.radius_for(max_abs) && min_separation(&s) > 1e-3);
        let p = Polynomial::from_roots(&s).unwrap();
        let rs = roots_of(&p, &tol).unwrap();
        prop_assert_eq!(rs.total_multiplicity, s.len());
        prop_assert_eq!(rs.len(), s.len());
        for z in &s {
            let d = rs.representatives().map(|r| (r - z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= rs.radius, "{} not recovered (distance {:e})", z, d);
        }
        for a in &rs.clusters {
            for b in &rs.clusters {
                if a != b {
                    prop_assert!((a.representative - b.representative).norm() > rs.radius);
                }
            }
        }
    }

    #[test]
    fn from_roots_vanishes_on_its_roots(s in prop::collection::vec(complex_in(5.0), 1..=12)) {
        let tol = ToleranceProfile::default();
        let p = Polynomial::from_roots(&s).unwrap();
        for &z in &s {
            prop_assert!(tol.accepts(&p, z));
        }
    }

    #[test]
    fn derivative_composes(coeffs in prop::collection::vec(complex_in(4.0), 2..=12), j in 0usize..6, k in 0usize..6) {
        let p = Polynomial::new(coeffs).unwrap();
        prop_assume!(j + k <= p.degree());
        let lhs = p.derivative(j).unwrap().derivative(k).unwrap();
        let rhs = p.derivative(j + k).unwrap();
        prop_assert!(rel_close(lhs.coeffs(), rhs.coeffs(), 1e-15));
    }

    #[test]
    fn symmetric_means_survive_differentiation(lower in prop::collection::vec(-20i32..=20, 2..=10)) {
        let lower: Vec<Complex64> = lower.iter().map(|&a| c(a as f64, 0.0)).collect();
        let p = Polynomial::monic(&lower).unwrap();
        let n = p.degree();
        let q = p.derivative(1).unwrap().to_monic();
        let mp = symmetric_means(&p).unwrap();
        let mq = symmetric_means(&q).unwrap();
        for k in 0..n {
            let scale = mp.c[k].norm().max(1e-300);
            prop_assert!((mp.c[k] - mq.c[k]).norm() <= 1e-12 * scale);
        }
        prop_assert!((centroid(&p).unwrap() - centroid(&q).unwrap()).norm() <= 1e-12 * (1.0 + centroid(&p).unwrap().norm()));
    }

    #[test]
    fn symmetric_means_reconstruct(s in prop::collection::vec(complex_in(2.0), 1..=8)) {
        // Independent route: e_k by explicit subset enumeration.
        let n = s.len();
        let p = Polynomial::from_roots(&s).unwrap();
        let m = symmetric_means(&p).unwrap();
        for k in 0..=n {
            let mut e = c(0.0, 0.0);
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize == k {
                    e += (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).product::<Complex64>();
                }
            }
            let binom: f64 = (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product();
            prop_assert!((m.c[k] - e / binom).norm() <= 1e-12 * (1.0 + e.norm()));
        }
    }

    #[test]
    fn system_is_triangular(alpha in prop::collection::vec(complex_in(5.0), 1..=12)) {
        let n = alpha.len();
        let sys = build_system(&NodeVector::new(alpha).unwrap());
        let mut fact = 1.0;
        for k in 0..=n {
            if k > 0 {
                fact *= k as f64;
            }
            prop_assert_eq!(sys.matrix[k][k], c(fact, 0.0));
            for j in 0..k {
                prop_assert_eq!(sys.matrix[k][j], c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn forward_solution_meets_conditions(alpha in prop::collection::vec(complex_in(5.0), 1..=10)) {
        let tol = ToleranceProfile::default();
        let alpha = NodeVector::new(alpha).unwrap();
        let p = solve_forward(&alpha);
        prop_assert!(p.is_monic());
        for (r, b) in condition_residuals(&p, &alpha).unwrap() {
            prop_assert!(r <= tol.threshold(b));
        }
    }

    #[test]
    fn hermite_collapse(a in complex_in(5.0), n in 1usize..=10) {
        let p = solve_forward(&NodeVector::new(vec![a; n]).unwrap());
        let want = Polynomial::power_of_linear(a, n).unwrap();
        prop_assert!(rel_close(want.coeffs(), p.coeffs(), 1e-12));
    }
}

/// Random polynomial with every derivative root set simple and separated.
fn generic_roots(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    loop {
        let s: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        if n < 2 || min_separation(&s) > 0.05 {
            return s;
        }
    }
}

#[test]
fn overdetermined_consistent_instances_from_actual_polynomials() {
    // For q of degree n, alpha_{k+1} is any root of q - q^(k) and c_k = q(alpha_{k+1}).
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=5 {
        for _ in 0..20 {
            let q = Polynomial::new((0..=n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).unwrap();
            let mut alpha = vec![c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))];
            for k in 1..n {
                let d = q.derivative(k).unwrap();
                let diff: Vec<Complex64> = q.coeffs().iter().enumerate()
                    .map(|(j, &a)| a - d.coeffs().get(j).copied().unwrap_or_default())
                    .collect();
                let roots = roots_of(&Polynomial::new(diff).unwrap(), &tol).unwrap();
                alpha.push(roots.clusters[rng.gen_range(0..roots.len())].representative);
            }
            let values: Vec<Complex64> = alpha.iter().map(|&a| q.evaluate(a)).collect();
            let alpha = NodeVector::new(alpha).unwrap();
            let report = analyze_overdetermined(&alpha, &values, &tol).unwrap();
            assert_eq!(report.distinct_equation_count, 2 * n - 1);
            assert!(report.consistent, "n={n} residual {:e} tol {:e}", report.residual_norm, report.tolerance);
            let x = report.solution.unwrap();
            let (rows, rhs) = build_rows(&alpha, &values).unwrap();
            for (row, b) in rows.iter().zip(&rhs) {
                let v: Complex64 = row.iter().zip(&x).map(|(a, b)| a * b).sum();
                assert!((v - b).norm() <= report.tolerance);
            }
        }
    }
}

#[test]
fn centroid_is_last_level() {
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=9 {
        for _ in 0..20 {
            let lower: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))).collect();
            let p = Polynomial::monic(&lower).unwrap();
            let nl = node_levels(&p, &tol).unwrap();
            let last = &nl.levels[n - 1];
            assert_eq!(last.len(), 1);
            let want = -p.coeffs()[n - 1] / n as f64;
            let bound = 1e-10 * (1.0 + p.coeffs()[n - 1].norm() / n as f64);
            assert!((last.clusters[0].representative - want).norm() <= bound);
        }
    }
}

#[test]
fn raw_count_is_factorial() {
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut fact = 1u128;
    for n in 1..=7usize {
        fact *= n as u128;
        let p = Polynomial::from_roots(&generic_roots(&mut rng, n)).unwrap();
        let nl = node_levels(&p, &tol).unwrap();
        assert!(nl.levels.iter().enumerate().all(|(k, l)| l.len() == n - k));
        let count = enumerate_assignments(&nl, DEFAULT_ENUMERATION_CAP).unwrap().count() as u128;
        assert_eq!(count, fact);
        assert_eq!(nl.distinct_count(), fact);
    }
}

#[test]
fn levels_are_permutation_invariant() {
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 3..=6 {
        let s = generic_roots(&mut rng, n);
        let p = Polynomial::from_roots(&s).unwrap();
        let base = node_levels(&p, &tol).unwrap();
        for _ in 0..100 {
            let mut perm = s.clone();
            perm.shuffle(&mut rng);
            let q = Polynomial::from_roots(&perm).unwrap();
            assert!(rel_close(p.coeffs(), q.coeffs(), 1e-12));
            let other = node_levels(&q, &tol).unwrap();
            let radius = base.levels.iter().map(|l| l.radius).fold(0.0, f64::max);
            assert!(base.matches(&other, radius));
        }
    }
}

#[test]
fn every_assignment_reproduces_polynomial() {
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 1..=6 {
        let p = Polynomial::from_roots(&generic_roots(&mut rng, n)).unwrap();
        let nl = node_levels(&p, &tol).unwrap();
        for a in enumerate_assignments(&nl, DEFAULT_ENUMERATION_CAP).unwrap() {
            let q = solve_forward(&a.alpha);
            assert!(rel_close(p.coeffs(), q.coeffs(), 1e-8), "n={n}");
            for (k, r) in a.residuals.iter().enumerate() {
                let b = p.derivative(k).unwrap().magnitude_bound(a.alpha.nodes()[k]);
                assert!(*r <= tol.threshold(b));
            }
        }
    }
}

#[test]
fn checker_sound_on_powers() {
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for n in 1..=10 {
        for _ in 0..10 {
            let r = rng.gen_range(0.0..1e3);
            let a = Complex64::from_polar(r, rng.gen_range(0.0..6.3));
            let p = Polynomial::power_of_linear(a, n).unwrap();
            let report = ca_check(&p, &tol).unwrap();
            assert!(report.verdict, "n={n} a={a}: {:?}", report.per_order);
            // The witness drives the forward problem back to p.
            let w = NodeVector::new(report.witness.unwrap()).unwrap();
            assert!(rel_close(p.coeffs(), solve_forward(&w).coeffs(), 1e-8));
        }
    }
}

#[test]
fn verdict_is_affine_invariant() {
    let tol = ToleranceProfile::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..100 {
        let n = 3 + i % 4;
        // Mix generic inputs with powers so both verdicts are exercised.
        let p = if i % 5 == 0 {
            Polynomial::power_of_linear(c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)), n).unwrap()
        } else {
            Polynomial::from_roots(&generic_roots(&mut rng, n)).unwrap()
        };
        let a = Complex64::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..6.3));
        let b = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let q = p.compose_affine(a, b).unwrap().to_monic();
        let rp = ca_check(&p, &tol).unwrap();
        let rq = ca_check(&q, &tol).unwrap();
        assert_eq!(rp.verdict, rq.verdict);
        assert_eq!(rp.failing_orders(), rq.failing_orders());
    }
}

#[test]
fn zero_defect_matches_verdict() {
    let tol = ToleranceProfile::default();
    let eps = tol.rel_tol * tol.rel_tol;
    let cases: Vec<Vec<Complex64>> = vec![
        vec![c(0.0, 0.0); 3],
        vec![c(1.5, -2.0); 6],
        vec![c(-3.0, 0.5); 9],
        vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 2.0), c(-1.0, 1.0)],
        vec![c(2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)],
    ];
    for roots in cases {
        let d = ca_defect(&roots).unwrap();
        let v = ca_check(&Polynomial::from_roots(&roots).unwrap(), &tol).unwrap().verdict;
        assert_eq!(d <= eps, v, "{roots:?}: defect {d:e}");
    }
}
