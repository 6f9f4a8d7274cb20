//! Report documents, one variant per command. JSON is the canonical form
//! (see `schema/report.schema.json`); CSV and text are flattened views.

use std::fmt::Write;

use calab_core::{CAReport, Complex64, OverdeterminedReport, RootSet, SearchResult, ToleranceProfile};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardReport {
    pub nodes: Vec<Complex64>,
    /// Ascending coefficients of the monic solution.
    pub coeffs: Vec<Complex64>,
    /// `|p^(k)(alpha_{k+1})|` for `k = 0..n-1`.
    pub residuals: Vec<f64>,
    /// Roots of the solution.
    pub roots: RootSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRow {
    pub alpha: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub matches_roots: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseReport {
    pub coeffs: Vec<Complex64>,
    /// Level `k` holds the roots of `p^(k)`.
    pub levels: Vec<RootSet>,
    pub raw_count: u64,
    pub distinct_count: u64,
    pub assignments: Vec<AssignmentRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub coeffs: Vec<Complex64>,
    pub roots: RootSet,
    pub report: CAReport,
    pub failing_orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub name: String,
    pub cases: usize,
    /// Worst observed error under the identity's own error measure.
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitiesReport {
    pub seed: u64,
    pub identities: Vec<IdentityResult>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Forward { tolerance: ToleranceProfile, result: ForwardReport },
    Integral { tolerance: ToleranceProfile, result: ForwardReport },
    Inverse { tolerance: ToleranceProfile, result: InverseReport },
    Check { tolerance: ToleranceProfile, result: CheckReport },
    Search { result: SearchResult },
    Problem3 { tolerance: ToleranceProfile, nodes: Vec<Complex64>, values: Vec<Complex64>, result: OverdeterminedReport },
    VerifyIdentities { tolerance: ToleranceProfile, result: IdentitiesReport },
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports contain only finite numbers");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Forward { result, .. } | Report::Integral { result, .. } => {
                out.push_str("power,re,im\n");
                for (j, c) in result.coeffs.iter().enumerate() {
                    let _ = writeln!(out, "{j},{},{}", c.re, c.im);
                }
            }
            Report::Inverse { result, .. } => {
                out.push_str("level,re,im,multiplicity\n");
                for (k, level) in result.levels.iter().enumerate() {
                    for cl in &level.clusters {
                        let _ = writeln!(out, "{k},{},{},{}", cl.representative.re, cl.representative.im, cl.multiplicity);
                    }
                }
            }
            Report::Check { result, .. } => {
                out.push_str("k,best_re,best_im,residual,scaled_residual,passes\n");
                for r in &result.report.per_order {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        r.k, r.best_root.re, r.best_root.im, r.residual, r.scaled_residual, r.passes
                    );
                }
            }
            Report::Search { result } => {
                out.push_str("start,defect\n");
                for (i, d) in result.per_start_defects.iter().enumerate() {
                    let _ = writeln!(out, "{i},{d}");
                }
            }
            Report::Problem3 { result, .. } => {
                out.push_str("field,value\n");
                let _ = writeln!(out, "distinct_equation_count,{}", result.distinct_equation_count);
                let _ = writeln!(out, "rank,{}", result.rank);
                let _ = writeln!(out, "residual_norm,{}", result.residual_norm);
                let _ = writeln!(out, "tolerance,{}", result.tolerance);
                let _ = writeln!(out, "consistent,{}", result.consistent);
                let _ = writeln!(out, "degenerate_degree,{}", result.degenerate_degree);
            }
            Report::VerifyIdentities { result, .. } => {
                out.push_str("identity,cases,max_error,tolerance,passed\n");
                for r in &result.identities {
                    let _ = writeln!(out, "{},{},{},{},{}", r.name, r.cases, r.max_error, r.tolerance, r.passed);
                }
            }
        }
        out
    }

    pub fn to_text(&self, color: bool) -> String {
        let verdict = |ok: bool| match (ok, color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        let cx = |c: &Complex64| format!("{}{:+}i", c.re, c.im);
        let mut out = String::new();
        match self {
            Report::Forward { result, .. } | Report::Integral { result, .. } => {
                let _ = writeln!(out, "degree {}", result.coeffs.len() - 1);
                for (j, c) in result.coeffs.iter().enumerate() {
                    let _ = writeln!(out, "  a_{j} = {}", cx(c));
                }
                for (k, r) in result.residuals.iter().enumerate() {
                    let _ = writeln!(out, "  |p^({k})(alpha_{})| = {r:e}", k + 1);
                }
            }
            Report::Inverse { result, .. } => {
                for (k, level) in result.levels.iter().enumerate() {
                    let items: Vec<String> = level
                        .clusters
                        .iter()
                        .map(|c| format!("{}:{}", cx(&c.representative), c.multiplicity))
                        .collect();
                    let _ = writeln!(out, "level {k}: {}", items.join(", "));
                }
                let _ = writeln!(out, "assignments: {} raw, {} distinct", result.raw_count, result.distinct_count);
            }
            Report::Check { result, .. } => {
                for r in &result.report.per_order {
                    let _ = writeln!(
                        out,
                        "k={} best={} residual={:e} scaled={:e} {}",
                        r.k,
                        cx(&r.best_root),
                        r.residual,
                        r.scaled_residual,
                        verdict(r.passes)
                    );
                }
                let _ = writeln!(out, "verdict: {}", verdict(result.report.verdict));
            }
            Report::Search { result } => {
                let _ = writeln!(out, "starts: {}  seed: {}", result.starts_run, result.seed);
                let _ = writeln!(out, "best defect: {:e}", result.best_defect);
                let roots: Vec<String> = result.best_roots.iter().map(cx).collect();
                let _ = writeln!(out, "best roots: {}", roots.join(", "));
            }
            Report::Problem3 { result, .. } => {
                let _ = writeln!(
                    out,
                    "equations {} unknowns {} rank {}",
                    result.distinct_equation_count, result.unknowns, result.rank
                );
                let _ = writeln!(out, "residual {:e} (tolerance {:e})", result.residual_norm, result.tolerance);
                let _ = writeln!(out, "consistent: {}", verdict(result.consistent));
            }
            Report::VerifyIdentities { result, .. } => {
                for r in &result.identities {
                    let _ = writeln!(
                        out,
                        "{:<28} {:>5} cases  max error {:e} (tol {:e})  {}",
                        r.name,
                        r.cases,
                        r.max_error,
                        r.tolerance,
                        verdict(r.passed)
                    );
                }
            }
        }
        out
    }
}
