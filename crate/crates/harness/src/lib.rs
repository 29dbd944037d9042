//! Experiment harness for the Rudvalis shuffle laboratory: configuration,
//! seeded parallel replicas, CSV/JSON outputs and statistical comparisons.

pub mod cli;
pub mod compare;
pub mod config;
pub mod error;
pub mod io;
pub mod report;
pub mod simulate;

use std::path::Path;

use rlab_core::field::FieldRecord;
use rlab_core::oracle::{validate_grid, ValidationReport};

pub use compare::compare;
pub use config::{ExperimentConfig, ExperimentKind, ResolvedConfig};
pub use error::{HarnessError, Result};
pub use report::{ComparisonReport, Entry, Outcome};

/// Everything one experiment produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub config: ResolvedConfig,
    pub records: Vec<FieldRecord>,
    pub report: ComparisonReport,
    pub oracle: Option<ValidationReport>,
}

/// Run `f` on a dedicated pool; `threads = 0` lets rayon pick.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::config(format!("cannot start {threads} threads: {e}")))?;
    Ok(pool.install(f))
}

/// Simulate and compare.
pub fn run(config: &ResolvedConfig, threads: usize) -> Result<RunOutput> {
    with_threads(threads, || {
        let records = simulate::simulate(config)?;
        let (report, oracle) = if config.experiment == ExperimentKind::OracleValidate {
            let validation = validate_grid(&config.oracle)?;
            let entries = compare::oracle_entries(&validation, config.tolerance.exact);
            (ComparisonReport::new(config.experiment.name(), config.seed, 0, entries), Some(validation))
        } else {
            (compare(config, &records)?, None)
        };
        Ok(RunOutput { config: config.clone(), records, report, oracle })
    })?
}

/// Write `samples.csv`, `report.json`, `config.json` (and
/// `oracle_report.json` for oracle runs) into `dir`.
pub fn write_outputs(dir: &Path, output: &RunOutput) -> Result<()> {
    io::ensure_dir(dir)?;
    io::write_records(&dir.join("samples.csv"), &output.records)?;
    io::write_json(&dir.join("report.json"), &output.report)?;
    io::write_json(&dir.join("config.json"), &output.config.archive())?;
    if let Some(oracle) = &output.oracle {
        io::write_json(&dir.join("oracle_report.json"), oracle)?;
    }
    Ok(())
}
