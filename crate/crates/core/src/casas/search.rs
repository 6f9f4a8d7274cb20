//! Multistart coordinate pattern search on [`ca_defect`](super::ca_defect).
//!
//! The condition is invariant under `z -> a z + b`, so two roots are pinned at
//! 0 and 1 and only the remaining `n - 2` roots move. This excludes the
//! `(z - a)^n` family from the search space.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ca_defect;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub degree: usize,
    pub multistarts: usize,
    pub seed: u64,
    pub step_init: f64,
    pub step_min: f64,
    pub max_iters: usize,
    pub box_radius: f64,
}

impl SearchConfig {
    pub fn new(degree: usize, multistarts: usize, seed: u64) -> Self {
        Self {
            degree,
            multistarts,
            seed,
            step_init: 0.25,
            step_min: 1e-9,
            max_iters: 2000,
            box_radius: 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 3 {
            return Err(Error::InvalidConfig("degree must be at least 3"));
        }
        if self.multistarts == 0 {
            return Err(Error::InvalidConfig("multistarts must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive"));
        }
        if !(self.step_min > 0.0 && self.step_min.is_finite()) {
            return Err(Error::InvalidConfig("step_min must be positive"));
        }
        if !(self.step_init.is_finite() && self.step_min < self.step_init) {
            return Err(Error::InvalidConfig("step_min must be below step_init"));
        }
        if !(self.box_radius > 0.0 && self.box_radius.is_finite()) {
            return Err(Error::InvalidConfig("box_radius must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_defect: f64,
    /// Full normalized configuration `(0, 1, w_3, ..., w_n)`.
    pub best_roots: Vec<Complex64>,
    pub starts_run: usize,
    pub per_start_defects: Vec<f64>,
    pub seed: u64,
}

fn configuration(free: &[Complex64]) -> Vec<Complex64> {
    let mut roots = Vec::with_capacity(free.len() + 2);
    roots.push(Complex64::new(0.0, 0.0));
    roots.push(Complex64::new(1.0, 0.0));
    roots.extend_from_slice(free);
    roots
}

fn objective(free: &[Complex64]) -> f64 {
    ca_defect(&configuration(free)).expect("configuration is nonempty and finite")
}

/// One local descent from `start` (the `n - 2` free roots). Each sweep probes
/// `+-step` along the real and imaginary axis of every free root, moving on
/// any improvement; a sweep without improvement halves the step.
///
/// Returns the final defect and the full normalized configuration.
pub fn pattern_search(start: &[Complex64], cfg: &SearchConfig) -> (f64, Vec<Complex64>) {
    let mut x = start.to_vec();
    let mut fx = objective(&x);
    let mut step = cfg.step_init;
    let mut iters = 0;
    while iters < cfg.max_iters && step >= cfg.step_min && fx > 0.0 {
        iters += 1;
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
            ] {
                let saved = x[i];
                x[i] = saved + dir * step;
                let f = objective(&x);
                if f < fx {
                    fx = f;
                    improved = true;
                } else {
                    x[i] = saved;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (fx, configuration(&x))
}

/// Seeded multistart search. Start `i` draws its free roots uniformly from the
/// square `[-R, R]^2` with a generator on stream `i` of `seed`, so results do
/// not depend on scheduling.
pub fn ca_search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let free = cfg.degree - 2;
    let runs: Vec<(f64, Vec<Complex64>)> = (0..cfg.multistarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let start: Vec<Complex64> = (0..free)
                .map(|_| {
                    Complex64::new(
                        rng.gen_range(-cfg.box_radius..=cfg.box_radius),
                        rng.gen_range(-cfg.box_radius..=cfg.box_radius),
                    )
                })
                .collect();
            pattern_search(&start, cfg)
        })
        .collect();
    let per_start_defects: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let (best_idx, _) = per_start_defects
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .expect("at least one start");
    Ok(SearchResult {
        best_defect: per_start_defects[best_idx],
        best_roots: runs[best_idx].1.clone(),
        starts_run: cfg.multistarts,
        per_start_defects,
        seed: cfg.seed,
    })
}
