//! Resolved run settings: defaults, then an optional JSON file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};

use fsnet_core::dynamics::QueuedDraws;
use fsnet_core::{Mode, ModelParams};
use serde::{Deserialize, Serialize};

/// Environment variable that replaces the output directory.
pub const OUT_DIR_ENV: &str = "FSNET_OUT_DIR";

/// Invalid input detected before any work starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub field: &'static str,
    pub message: String,
}

impl UsageError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self { field, message: message.into() }
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Discrete,
    Continuous,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Discrete => Mode::Discrete,
            ModeArg::Continuous => Mode::Continuous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum QueuedDrawsArg {
    #[default]
    Fluctuate,
    HoldIncrease,
}

impl From<QueuedDrawsArg> for QueuedDraws {
    fn from(q: QueuedDrawsArg) -> Self {
        match q {
            QueuedDrawsArg::Fluctuate => QueuedDraws::Fluctuate,
            QueuedDrawsArg::HoldIncrease => QueuedDraws::HoldIncrease,
        }
    }
}

/// Seeds given as a count `N` (meaning `0..N`) or an explicit list `a,b,c`.
/// A single explicit seed is written with a trailing comma, `7,`.
pub fn parse_seeds(text: &str) -> Result<crate::cli::Seeds, String> {
    seed_list(text).map(crate::cli::Seeds)
}

fn seed_list(text: &str) -> Result<Vec<u64>, String> {
    let text = text.trim();
    if text.contains(',') {
        let seeds: Vec<u64> = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u64>().map_err(|_| format!("`{s}` is not a seed")))
            .collect::<Result<_, _>>()?;
        if seeds.is_empty() {
            return Err("empty seed list".into());
        }
        Ok(seeds)
    } else {
        let n: u64 = text.parse().map_err(|_| format!("`{text}` is neither a count nor a list"))?;
        if n == 0 {
            return Err("seed count must be positive".into());
        }
        Ok((0..n).collect())
    }
}

/// Settings shared by the simulation commands, as written into every
/// artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: ModeArg,
    pub n: usize,
    pub a: f64,
    pub c: f64,
    /// Edges of the initial `G(n, m)`.
    pub m: usize,
    /// Sweeps or events to run (the burn-in for attack commands).
    pub horizon: u64,
    /// Iterations between samples.
    pub interval: u64,
    /// Trailing samples pooled into each run's degree histogram.
    pub pool: u64,
    pub seeds: Vec<u64>,
    pub queued_draws: QueuedDrawsArg,
    pub out_dir: PathBuf,
}

/// The same fields, all optional, as read from a JSON config file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub mode: Option<ModeArg>,
    pub n: Option<usize>,
    pub a: Option<f64>,
    pub c: Option<f64>,
    pub m: Option<usize>,
    pub horizon: Option<u64>,
    pub interval: Option<u64>,
    pub pool: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    pub queued_draws: Option<QueuedDrawsArg>,
    pub out_dir: Option<PathBuf>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| UsageError::new("config", format!("{}: {e}", path.display())).into())
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: PartialConfig) -> Self {
        Self {
            mode: over.mode.or(self.mode),
            n: over.n.or(self.n),
            a: over.a.or(self.a),
            c: over.c.or(self.c),
            m: over.m.or(self.m),
            horizon: over.horizon.or(self.horizon),
            interval: over.interval.or(self.interval),
            pool: over.pool.or(self.pool),
            seeds: over.seeds.or(self.seeds),
            queued_draws: over.queued_draws.or(self.queued_draws),
            out_dir: over.out_dir.or(self.out_dir),
        }
    }

    /// Fills defaults and validates. `env_out` is the value of
    /// [`OUT_DIR_ENV`], which replaces any configured directory.
    pub fn resolve(self, env_out: Option<PathBuf>) -> Result<RunConfig, UsageError> {
        let n = self.n.unwrap_or(1000);
        let horizon = self.horizon.unwrap_or(1000);
        let cfg = RunConfig {
            mode: self.mode.unwrap_or(ModeArg::Discrete),
            n,
            a: self.a.unwrap_or(1.0),
            c: self.c.unwrap_or(0.1),
            m: self.m.unwrap_or(2 * n),
            horizon,
            interval: self.interval.unwrap_or((horizon / 100).max(1)),
            pool: self.pool.unwrap_or(1),
            seeds: self.seeds.ok_or_else(|| UsageError::new("seeds", "required (a count N or a list a,b,c)"))?,
            queued_draws: self.queued_draws.unwrap_or_default(),
            out_dir: env_out.or(self.out_dir).unwrap_or_else(|| PathBuf::from("fsnet-out")),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.n, self.a, self.c, self.mode.into()).expect("validated")
    }

    /// Sample iterations: 0, every `interval`, and the horizon.
    pub fn sample_points(&self) -> Vec<u64> {
        let mut pts: Vec<u64> = (0..=self.horizon).step_by(self.interval as usize).collect();
        if *pts.last().expect("0 is always sampled") != self.horizon {
            pts.push(self.horizon);
        }
        pts
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        ModelParams::new(self.n, self.a, self.c, self.mode.into()).map_err(|e| {
            let field = match &e {
                fsnet_core::Error::InvalidParameter { name, .. } => *name,
                _ => "n",
            };
            UsageError::new(field, e.to_string())
        })?;
        let max_edges = self.n * (self.n - 1) / 2;
        if self.m > max_edges {
            return Err(UsageError::new("m", format!("{} edges do not fit on {} nodes (max {max_edges})", self.m, self.n)));
        }
        if self.interval == 0 {
            return Err(UsageError::new("interval", "must be positive"));
        }
        if self.pool == 0 || self.pool as usize > self.sample_points().len() {
            return Err(UsageError::new(
                "pool",
                format!("must lie in 1..={} for this horizon and interval", self.sample_points().len()),
            ));
        }
        if self.seeds.is_empty() {
            return Err(UsageError::new("seeds", "at least one seed is required"));
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.seeds.len() {
            return Err(UsageError::new("seeds", "seeds must be distinct"));
        }
        Ok(())
    }
}
