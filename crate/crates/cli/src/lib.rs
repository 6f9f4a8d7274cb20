//! Batch front end over `calab-core`: parse a JSON input, run one analysis,
//! and emit a report (JSON, CSV or text) plus an optional SVG plot.
//!
//! Exit status: 0 success, 1 negative verdict (`check`, `problem3`,
//! `verify-identities`), 2 input error, 3 numerical failure.

pub mod identities;
pub mod input;
pub mod plot;
pub mod report;

use std::fmt;

use calab_core::{
    analyze_overdetermined, assignment_matches_roots, ca_check, ca_search, enumerate_assignments,
    iterated_integral, node_levels, roots_of, solve_forward, NodeVector, Polynomial,
    SearchConfig, ToleranceProfile, DEFAULT_ENUMERATION_CAP,
};
use clap::ValueEnum;

use crate::plot::Series;
use crate::report::{AssignmentRow, CheckReport, ForwardReport, InverseReport, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Forward,
    Integral,
    Inverse,
    Check,
    Search,
    Problem3,
    VerifyIdentities,
}

impl Command {
    /// Whether the command reads an input document.
    pub fn needs_input(self) -> bool {
        !matches!(self, Command::Search | Command::VerifyIdentities)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub want_plot: bool,
    pub tolerance: ToleranceProfile,
    pub seed: Option<u64>,
    pub degree: Option<usize>,
    pub multistarts: Option<usize>,
    pub cap: u128,
    pub color: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            format: OutputFormat::Json,
            want_plot: false,
            tolerance: ToleranceProfile::default(),
            seed: None,
            degree: None,
            multistarts: None,
            cap: DEFAULT_ENUMERATION_CAP,
            color: false,
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;

/// Malformed input with a 1-based source position.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("input:{line}:{column}: {message}")]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
    pub plot: Option<String>,
    pub report: Option<Report>,
}

impl Outcome {
    fn failure(status: i32, message: impl fmt::Display) -> Self {
        Self { status, stdout: String::new(), stderr: format!("error: {message}\n"), plot: None, report: None }
    }
}

fn core_failure(e: calab_core::Error) -> Outcome {
    let status = match e {
        calab_core::Error::NoConvergence { .. } => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    };
    Outcome::failure(status, e)
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return core_failure(e),
        }
    };
}

macro_rules! parse {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::failure(EXIT_INPUT, e),
        }
    };
}

fn forward_report(p: Polynomial, alpha: &NodeVector, tol: &ToleranceProfile) -> Result<ForwardReport, calab_core::Error> {
    let residuals = calab_core::birkhoff::condition_residuals(&p, alpha)?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    let roots = roots_of(&p, tol)?;
    Ok(ForwardReport { nodes: alpha.nodes().to_vec(), coeffs: p.into_coeffs(), residuals, roots })
}

/// Runs one command over `input` without touching the filesystem.
pub fn run(config: &RunConfig, input: &str) -> Outcome {
    if let Err(e) = config.tolerance.validate() {
        return Outcome::failure(EXIT_INPUT, e);
    }
    let tol = config.tolerance;
    let (report, status, series, title): (Report, i32, Vec<Series>, String) = match config.command {
        Command::Forward | Command::Integral => {
            let alpha = attempt!(NodeVector::new(parse!(input::nodes_input(input))));
            let forward = config.command == Command::Forward;
            let p = if forward { solve_forward(&alpha) } else { iterated_integral(&alpha) };
            let result = attempt!(forward_report(p, &alpha, &tol));
            let series = vec![
                Series { label: "roots of p".into(), points: result.roots.expanded(), filled: true },
                Series { label: "nodes".into(), points: alpha.nodes().to_vec(), filled: false },
            ];
            let report = if forward {
                Report::Forward { tolerance: tol, result }
            } else {
                Report::Integral { tolerance: tol, result }
            };
            (report, EXIT_OK, series, "forward interpolation".into())
        }
        Command::Inverse => {
            let p = attempt!(parse!(input::polynomial_input(input)).polynomial());
            let levels = attempt!(node_levels(&p, &tol));
            let assignments = attempt!(enumerate_assignments(&levels, config.cap));
            let rows = assignments
                .map(|a| {
                    let matches_roots = assignment_matches_roots(&p, &a, &tol)?;
                    Ok(AssignmentRow { alpha: a.alpha.nodes().to_vec(), residuals: a.residuals, matches_roots })
                })
                .collect::<Result<Vec<_>, calab_core::Error>>();
            let rows = attempt!(rows);
            let mut series = vec![Series {
                label: "roots of p".into(),
                points: levels.levels[0].expanded(),
                filled: true,
            }];
            for (k, level) in levels.levels.iter().enumerate().skip(1) {
                series.push(Series { label: format!("roots of p^({k})"), points: level.expanded(), filled: false });
            }
            let result = InverseReport {
                coeffs: p.coeffs().to_vec(),
                raw_count: levels.raw_count() as u64,
                distinct_count: levels.distinct_count() as u64,
                levels: levels.levels,
                assignments: rows,
            };
            (Report::Inverse { tolerance: tol, result }, EXIT_OK, series, "node levels".into())
        }
        Command::Check => {
            let p = attempt!(parse!(input::polynomial_input(input)).polynomial());
            let roots = attempt!(roots_of(&p, &tol));
            let report = attempt!(ca_check(&p, &tol));
            let status = if report.verdict { EXIT_OK } else { EXIT_NEGATIVE };
            let series = vec![Series { label: "roots of p".into(), points: roots.expanded(), filled: true }];
            let result = CheckReport {
                coeffs: p.coeffs().to_vec(),
                roots,
                failing_orders: report.failing_orders(),
                report,
            };
            (Report::Check { tolerance: tol, result }, status, series, "common-root check".into())
        }
        Command::Search => {
            let (Some(degree), Some(multistarts)) = (config.degree, config.multistarts) else {
                return Outcome::failure(EXIT_INPUT, "search requires --degree and --multistarts");
            };
            let cfg = SearchConfig::new(degree, multistarts, config.seed.unwrap_or(DEFAULT_SEED));
            let result = attempt!(ca_search(&cfg));
            let series =
                vec![Series { label: "best configuration".into(), points: result.best_roots.clone(), filled: true }];
            (Report::Search { result }, EXIT_OK, series, format!("defect search, degree {degree}"))
        }
        Command::Problem3 => {
            let (nodes, values) = parse!(input::problem3_input(input));
            let alpha = attempt!(NodeVector::new(nodes.clone()));
            let result = attempt!(analyze_overdetermined(&alpha, &values, &tol));
            let status = if result.consistent { EXIT_OK } else { EXIT_NEGATIVE };
            let mut series = vec![Series { label: "nodes".into(), points: nodes.clone(), filled: false }];
            if let Some(p) = result.solution_polynomial().filter(|p| p.degree() > 0) {
                if let Ok(rs) = roots_of(&p, &tol) {
                    series.insert(0, Series { label: "roots of solution".into(), points: rs.expanded(), filled: true });
                }
            }
            (Report::Problem3 { tolerance: tol, nodes, values, result }, status, series, "doubled conditions".into())
        }
        Command::VerifyIdentities => {
            let result = attempt!(identities::verify(config.seed.unwrap_or(DEFAULT_SEED), &tol));
            let status = if result.all_passed { EXIT_OK } else { EXIT_NEGATIVE };
            (Report::VerifyIdentities { tolerance: tol, result }, status, Vec::new(), "identities".into())
        }
    };

    let stdout = match config.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Text => report.to_text(config.color),
    };
    let plot = config.want_plot.then(|| plot::render(&title, &series));
    Outcome { status, stdout, stderr: String::new(), plot, report: Some(report) }
}
