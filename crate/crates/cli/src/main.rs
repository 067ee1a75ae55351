//! `roller`: cubulate pocsets, sample random walks on cube complexes of
//! right-angled Artin groups, certify boundary behaviour and build
//! ping-pong tables.
//!
//! Exit codes: 0 success, 2 input error, 3 search exhausted, 1 internal failure.

mod commands;
mod config;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Command, ExperimentConfig, Format, PresetField};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Exhausted(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Exhausted(_) => 3,
            CliError::Failed(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Exhausted(m) | CliError::Failed(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "roller", version, about = "Experiments on CAT(0) cube complexes and their random walks")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Build the dual median graph of a pocset file.
    Cubulate(Flags),
    /// Sample random walks and report drift, stabilization and hitting frequencies.
    Walk(Flags),
    /// Regular-point chains, separation of limits and strip growth.
    Certify(Flags),
    /// Construct and verify a ping-pong table in each product factor.
    Pingpong(Flags),
    /// Report on a pocset (with optional interval or bridge) or a preset.
    Inspect(InspectFlags),
}

/// Flags override the fields of `--config`.
#[derive(Args, Debug, Default)]
struct Flags {
    /// JSON experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset shorthand: f<n>, z<n>, products like f2xf2, or raag:<graph.json>.
    #[arg(long)]
    preset: Option<String>,
    /// Pocset JSON file.
    #[arg(long)]
    pocset: Option<PathBuf>,
    /// Step distribution, e.g. `a=0.25,a^-1=0.25,b=0.25,b^-1=0.25`.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    paths: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Search radius for certificates and ping-pong tables.
    #[arg(long)]
    radius: Option<usize>,
    /// Walls within this radius of the basepoint are tracked during walks.
    #[arg(long)]
    monitor_radius: Option<usize>,
    /// Stabilization window; defaults to max(1000, steps/10) capped at steps.
    #[arg(long)]
    window: Option<usize>,
    /// Longest reduced word checked by ping-pong verification.
    #[arg(long)]
    length: Option<usize>,
    /// Cap on regular-point chain length.
    #[arg(long)]
    max_chain: Option<usize>,
    /// Output directory; without it the main artifact goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct InspectFlags {
    #[command(flatten)]
    flags: Flags,
    /// Interval between two sign strings, e.g. `+-+,--+`.
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    /// Bridge between two disjoint half-space ids, e.g. `0,7`.
    #[arg(long)]
    bridge: Option<String>,
}

fn parse_mu(s: &str) -> Result<BTreeMap<String, f64>, CliError> {
    s.split(',')
        .map(|item| {
            let (word, weight) = item
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("expected word=weight, got '{item}'")))?;
            let weight: f64 = weight
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("invalid weight in '{item}'")))?;
            Ok((word.trim().to_string(), weight))
        })
        .collect()
}

fn resolve(flags: Flags) -> Result<ExperimentConfig, CliError> {
    let file = match &flags.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let overrides = ExperimentConfig {
        preset: flags.preset.map(PresetField::Shorthand),
        pocset: flags.pocset,
        mu: flags.mu.as_deref().map(parse_mu).transpose()?,
        steps: flags.steps,
        paths: flags.paths,
        seed: flags.seed,
        monitor_radius: flags.monitor_radius,
        radius: flags.radius,
        window: flags.window,
        length: flags.length,
        max_chain: flags.max_chain,
        out: flags.out,
        format: flags.format,
    };
    Ok(file.overridden_by(overrides))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Sub::Cubulate(f) => commands::cubulate(resolve(f)?),
        Sub::Walk(f) => commands::walk(resolve(f)?, Command::Walk),
        Sub::Certify(f) => commands::walk(resolve(f)?, Command::Certify),
        Sub::Pingpong(f) => commands::pingpong(resolve(f)?),
        Sub::Inspect(i) => commands::inspect(resolve(i.flags)?, i.interval.as_deref(), i.bridge.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
