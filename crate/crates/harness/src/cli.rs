//! `rlab` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{ExperimentConfig, ExperimentKind, SpdeSettings};
use crate::error::HarnessError;
use crate::report::{ComparisonReport, Outcome};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const CONFIG: i32 = 3;
    pub const OUTPUT: i32 = 4;
    pub const INCONCLUSIVE: i32 = 5;
    pub const RUNTIME: i32 = 6;
    pub const INPUT: i32 = 7;
}

pub const THREADS_ENV: &str = "RLAB_THREADS";
const DEFAULT_OUT: &str = "rlab-out";

#[derive(Debug, Parser)]
#[command(name = "rlab", version, about = "Generalized Rudvalis shuffle laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the experiment described by a configuration.
    Simulate(RunArgs),
    /// Check the exact generator identities over a grid of small decks.
    Oracle(OracleArgs),
    /// Run the spectral SPDE reference with the configuration's parameters.
    Spde(RunArgs),
    /// Recompute a comparison report from a configuration and a CSV.
    Compare(CompareArgs),
    /// Print a saved report and exit with its outcome.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Replica count (SPDE paths for `spde`).
    #[arg(long)]
    replicas: Option<usize>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV written by `simulate`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// `report.json` written by another subcommand.
    #[arg(long)]
    input: PathBuf,
}

fn error_code(e: &HarnessError) -> i32 {
    match e {
        HarnessError::Config(_) => exit::CONFIG,
        HarnessError::Output { .. } => exit::OUTPUT,
        HarnessError::Input { .. } | HarnessError::MissingData(_) => exit::INPUT,
        HarnessError::Core(_) => exit::RUNTIME,
    }
}

fn outcome_code(report: &ComparisonReport) -> i32 {
    match report.outcome {
        Outcome::Pass => exit::OK,
        Outcome::Fail => exit::FAILED,
        Outcome::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn print_report(report: &ComparisonReport) {
    for e in &report.entries {
        println!("{}", e.summary_line());
    }
    println!(
        "{}: {} passed, {} failed, {} inconclusive -> {}",
        report.experiment,
        report.tally.pass,
        report.tally.fail,
        report.tally.inconclusive,
        report.outcome.label()
    );
}

fn threads(flag: Option<usize>) -> Result<usize, String> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a thread count, got {v:?}")),
        Err(_) => Ok(0),
    }
}

fn out_dir(flag: Option<PathBuf>, config: &ExperimentConfig) -> PathBuf {
    flag.or_else(|| config.output.clone()).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn execute(config: ExperimentConfig, out: PathBuf, threads: usize) -> Result<i32, HarnessError> {
    let resolved = config.resolve()?;
    let output = crate::run(&resolved, threads)?;
    crate::write_outputs(&out, &output)?;
    print_report(&output.report);
    Ok(outcome_code(&output.report))
}

fn load(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    ExperimentConfig::load(path)
}

/// Run the command line and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => run_args(a, None),
        Command::Spde(a) => run_args(a, Some(ExperimentKind::SpdeReference)),
        Command::Oracle(a) => {
            let config = match &a.config {
                Some(path) => load(path),
                None => Ok(ExperimentConfig::default()),
            };
            match (config, threads(a.threads)) {
                (_, Err(msg)) => return usage(&msg),
                (Err(e), _) => Err(e),
                (Ok(mut config), Ok(t)) => {
                    config.experiment = Some(ExperimentKind::OracleValidate);
                    let out = out_dir(a.out, &config);
                    execute(config, out, t)
                }
            }
        }
        Command::Compare(a) => compare_args(a),
        Command::Report(a) => crate::io::read_report(&a.input).map(|report| {
            print_report(&report);
            outcome_code(&report)
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn usage(message: &str) -> i32 {
    eprintln!("error: {message}");
    exit::USAGE
}

fn run_args(a: RunArgs, force: Option<ExperimentKind>) -> Result<i32, HarnessError> {
    let t = match threads(a.threads) {
        Ok(t) => t,
        Err(msg) => return Ok(usage(&msg)),
    };
    let mut config = load(&a.config)?;
    if let Some(kind) = force {
        config.experiment = Some(kind);
    }
    if let Some(seed) = a.seed {
        config.seed = Some(seed);
    }
    if let Some(m) = a.replicas {
        if config.experiment == Some(ExperimentKind::SpdeReference) {
            config.spde = Some(SpdeSettings { paths: m, ..config.spde.unwrap_or_default() });
        } else {
            config.replicas = Some(m);
        }
    }
    let out = out_dir(a.out, &config);
    execute(config, out, t)
}

fn compare_args(a: CompareArgs) -> Result<i32, HarnessError> {
    let config = load(&a.config)?;
    let resolved = config.resolve()?;
    let records = crate::io::read_records(&a.input)?;
    let report = crate::compare(&resolved, &records)?;
    let out = out_dir(a.out, &config);
    crate::io::ensure_dir(&out)?;
    crate::io::write_json(&out.join("report.json"), &report)?;
    print_report(&report);
    Ok(outcome_code(&report))
}
