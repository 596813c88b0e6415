//! Command-line pipeline: corpus → features → hardness labels → classifiers,
//! rules and runtime models. Each stage reads and writes plain files.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::PipelineConfig;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "graphhard", version, about = "Maximum-clique instance hardness pipeline")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Overrides the output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract graph features into features.csv.
    Features,
    /// Solve, time and label every instance.
    Label,
    /// Grid-search classifiers and run forward feature selection.
    Train,
    /// Mine association rules for hardness.
    Mine,
    /// Fit runtime regressors per solver.
    Runtime,
    /// Summarize existing stage outputs.
    Report,
    /// Show the effective configuration.
    Config {
        /// Print the built-in defaults instead.
        #[arg(long)]
        print_defaults: bool,
    },
}

/// The configuration `cli` asks for: the file (or defaults) with flag
/// overrides applied.
pub fn resolve_config(cli: &Cli) -> Result<PipelineConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs `f` on a pool of `jobs` threads (`None` or 0: rayon's default).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    Ok(pool.install(f))
}

pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    if let Command::Config { print_defaults: true } = cli.command {
        print!("{}", PipelineConfig::default().to_toml());
        return Ok(Vec::new());
    }
    let cfg = resolve_config(cli)?;
    let stage = match cli.command {
        Command::Features => commands::cmd_features,
        Command::Label => commands::cmd_label,
        Command::Train => commands::cmd_train,
        Command::Mine => commands::cmd_mine,
        Command::Runtime => commands::cmd_runtime,
        Command::Report => commands::cmd_report,
        Command::Config { .. } => {
            print!("{}", cfg.to_toml());
            return Ok(Vec::new());
        }
    };
    with_jobs(cli.jobs, || stage(&cfg))?
}
