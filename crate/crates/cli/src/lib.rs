//! Experiment runner for the `homlab` library: subcommands, TOML configs,
//! deterministic reports and JSON/CSV/graph6 output.

pub mod args;
mod commands;
pub mod config;
pub mod report;

use std::time::Instant;

use anyhow::{bail, Result};
use clap::Parser;
use homlab::Execution;

pub use args::{Cli, CliCommand, Command};
pub use config::{ConfigFile, ExperimentConfig};
pub use report::{Emit, Format, Outcome, RunReport, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn run_with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce(Execution) -> Result<T> + Send) -> Result<T> {
    match workers {
        None => f(Execution::Parallel),
        Some(0) => bail!("--workers must be at least 1"),
        Some(1) => f(Execution::Sequential),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build()?;
            pool.install(|| f(Execution::Parallel))
        }
    }
}

/// Runs one experiment and returns its report with the outcome's table and graphs.
pub fn execute_with_outcome(config: &ExperimentConfig) -> Result<(RunReport, Outcome)> {
    let mut config = config.clone();
    let start = Instant::now();
    let mut command = config.command.clone();
    let outcome = run_with_workers(config.workers, |exec| commands::dispatch(&mut command, exec))?;
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    config.command = command;
    let report = RunReport {
        command: config.command.name().to_string(),
        config: serde_json::to_value(&config)?,
        result: outcome.result.clone(),
        timing_ms,
        version: VERSION.to_string(),
    };
    Ok((report, outcome))
}

pub fn execute(config: &ExperimentConfig) -> Result<RunReport> {
    Ok(execute_with_outcome(config)?.0)
}

/// Merges the config file (if any) under the command-line options.
pub fn resolve(cli: Cli) -> Result<ExperimentConfig> {
    let file = match &cli.config {
        Some(path) => Some(ConfigFile::load(path)?),
        None => None,
    };
    let from_cli = match cli.command {
        CliCommand::Run => None,
        CliCommand::Experiment(command) => Some(ExperimentConfig {
            command,
            emit: cli.emit.clone(),
            workers: cli.workers,
        }),
    };
    match (file, from_cli) {
        (Some(file), cli_cfg) => {
            let mut merged = file.merge(cli_cfg.as_ref())?;
            if cli_cfg.is_none() {
                merged.emit = cli.emit.or(merged.emit);
                merged.workers = cli.workers.or(merged.workers);
            }
            Ok(merged)
        }
        (None, Some(cfg)) => Ok(cfg),
        (None, None) => bail!("`run` needs --config <file>"),
    }
}

/// Entry point shared by the binary and tests; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let result = resolve(cli).and_then(|config| {
        let (report, outcome) = execute_with_outcome(&config)?;
        Emit::parse(config.emit.as_deref()).write(&report, &outcome)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
