use std::io::{IsTerminal, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use calab::{run, Command, OutputFormat, RunConfig, EXIT_INPUT};
use calab_core::{ToleranceProfile, DEFAULT_ENUMERATION_CAP};
use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "calab", version, about = "Birkhoff interpolation and common-root analysis of complex polynomials")]
struct Args {
    /// Analysis to run.
    #[arg(value_enum)]
    command: Command,
    /// JSON input file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Write a complex-plane SVG plot to this path.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    tol_abs: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tol_rel: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Polynomial degree for `search`.
    #[arg(long)]
    degree: Option<usize>,
    /// Number of local descents for `search`.
    #[arg(long)]
    multistarts: Option<usize>,
    /// Upper bound on enumerated node assignments for `inverse`.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut tolerance = ToleranceProfile::default();
    if let Some(t) = args.tol_abs {
        tolerance.abs_tol = t;
    }
    if let Some(t) = args.tol_rel {
        tolerance.rel_tol = t;
    }
    let config = RunConfig {
        command: args.command,
        format: args.format,
        want_plot: args.plot.is_some(),
        tolerance,
        seed: args.seed,
        degree: args.degree,
        multistarts: args.multistarts,
        cap: args.cap,
        color: std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal(),
    };

    let mut input = String::new();
    if config.command.needs_input() {
        let read = match &args.input {
            Some(path) => std::fs::read_to_string(path).map(|s| input = s),
            None => std::io::stdin().read_to_string(&mut input).map(|_| ()),
        };
        if let Err(e) = read {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }

    let outcome = run(&config, &input);
    eprint!("{}", outcome.stderr);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{}", outcome.stdout),
    }
    if let (Some(path), Some(svg)) = (&args.plot, &outcome.plot) {
        if let Err(e) = std::fs::write(path, svg) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(outcome.status as u8)
}
