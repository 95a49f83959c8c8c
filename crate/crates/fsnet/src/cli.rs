//! Argument definitions and dispatch.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fsnet_core::AttackStrategy;
use serde::Serialize;

use crate::commands;
use crate::config::{parse_seeds, ModeArg, PartialConfig, QueuedDrawsArg, RunConfig, OUT_DIR_ENV};
use crate::output::Artifacts;

#[derive(Debug, Parser)]
#[command(name = "fsnet", version, about = "Fixed-size dynamic network experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve networks and compare their degree law with theory.
    Evolve(EvolveArgs),
    /// Burn in, attack, and tabulate the damaged networks.
    Attack(AttackArgs),
    /// Burn in, attack, and trace the recovery.
    Recover(RecoverArgs),
    /// Fit the stationary law to a network's degree distribution.
    Fit(FitArgs),
    /// Evolve model networks matched to a real one and compare.
    Compare(CompareArgs),
    /// Replay a temporal edge list with fixed edge lifetimes.
    Replay(ReplayArgs),
}

/// Parsed `--seeds` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeds(pub Vec<u64>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    Random,
    Degree,
    Betweenness,
}

impl From<StrategyArg> for AttackStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Random => AttackStrategy::Random,
            StrategyArg::Degree => AttackStrategy::Degree,
            StrategyArg::Betweenness => AttackStrategy::Betweenness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    /// `u v [ignored ...]` per line.
    EdgeList,
    /// `u v t` per line, collapsed to its static graph.
    Temporal,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// JSON file with any of the run fields; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Edges of the initial random graph (default 2n).
    #[arg(long)]
    pub m: Option<usize>,
    /// Sweeps (discrete) or events (continuous).
    #[arg(long)]
    pub horizon: Option<u64>,
    /// Iterations between samples.
    #[arg(long)]
    pub interval: Option<u64>,
    /// Trailing samples pooled into each run's histogram.
    #[arg(long)]
    pub pool: Option<u64>,
    /// A count N (seeds 0..N) or a list such as 3,8,11.
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Option<Seeds>,
    #[arg(long, value_enum)]
    pub queued_draws: Option<QueuedDrawsArg>,
    /// Output directory; FSNET_OUT_DIR replaces it when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
}

impl ModelArgs {
    fn flags(&self) -> PartialConfig {
        PartialConfig {
            mode: self.mode,
            n: self.n,
            a: self.a,
            c: self.c,
            m: self.m,
            horizon: self.horizon,
            interval: self.interval,
            pool: self.pool,
            seeds: self.seeds.clone().map(|s| s.0),
            queued_draws: self.queued_draws,
            out_dir: self.out.clone(),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        Ok(file.overlay(self.flags()).resolve(env_out_dir())?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AttackArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "degree")]
    pub strategy: StrategyArg,
    /// Comma-separated removal fractions.
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.02,0.03")]
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "degree")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0.01)]
    pub ratio: f64,
    /// Iterations to follow after the attack (default: the horizon).
    #[arg(long)]
    pub recover_for: Option<u64>,
    /// Iterations between trace samples (default: a 200th of the span).
    #[arg(long)]
    pub every: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "edge-list")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "edge-list")]
    pub format: FormatArg,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long, value_parser = parse_seeds)]
    pub seeds: Seeds,
    /// Use these parameters instead of fitting (both required).
    #[arg(long, allow_hyphen_values = true, requires = "c")]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub c: Option<f64>,
    /// Iterations before the first snapshot (default: 1e5 sweeps or 8e4 n events).
    #[arg(long)]
    pub burn_in: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub snapshots: u64,
    #[arg(long, default_value_t = 1)]
    pub spacing: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    pub path: PathBuf,
    /// Comma-separated edge lifetimes.
    #[arg(long, alias = "lifetime", value_delimiter = ',', default_value = "2e3,2e4,2e5")]
    pub lifetimes: Vec<f64>,
    /// Sort events by time instead of rejecting disorder.
    #[arg(long)]
    pub sort: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

pub fn env_out_dir() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Output directory for the commands without a run config.
pub fn out_dir(flag: &Option<PathBuf>) -> PathBuf {
    env_out_dir().or_else(|| flag.clone()).unwrap_or_else(|| PathBuf::from("fsnet-out"))
}

pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(crate::config::UsageError::new("threads", "must be positive").into());
        }
        builder = builder.num_threads(t);
    }
    Ok(builder.build()?)
}

pub fn run(cli: Cli) -> Result<Artifacts> {
    match cli.command {
        Command::Evolve(args) => commands::evolve(&args),
        Command::Attack(args) => commands::attack(&args),
        Command::Recover(args) => commands::recover(&args),
        Command::Fit(args) => commands::fit(&args),
        Command::Compare(args) => commands::compare(&args),
        Command::Replay(args) => commands::replay(&args),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_offset_parses() {
        let cli = Cli::try_parse_from(["fsnet", "evolve", "--c", "-0.5", "--seeds", "2"]).unwrap();
        let Command::Evolve(args) = cli.command else { panic!() };
        assert_eq!(args.model.c, Some(-0.5));
        assert_eq!(args.model.seeds, Some(Seeds(vec![0, 1])));
    }

    #[test]
    fn lists_parse() {
        let cli = Cli::try_parse_from(["fsnet", "attack", "--seeds", "1,", "--ratios", "0.1,0.2"]).unwrap();
        let Command::Attack(args) = cli.command else { panic!() };
        assert_eq!(args.ratios, [0.1, 0.2]);
        assert!(Cli::try_parse_from(["fsnet", "compare", "x", "--mode", "discrete", "--seeds", "1", "--a", "1"]).is_err());
    }
}
