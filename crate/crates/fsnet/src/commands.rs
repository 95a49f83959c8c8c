//! Subcommand bodies. Each returns the artifacts it wrote.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use fsnet_core::dynamics::{ContinuousModel, DiscreteModel, Evolution};
use fsnet_core::empirical::{
    fit_params, model_residual, residence_times, simulate_match, temporal_replay, transition_direction, CompareOptions,
    FitResult, GraphSummary,
};
use fsnet_core::metrics::{avg_shortest_path, MetricLevel, MetricsRecord};
use fsnet_core::theory::{self, stationary_closed_form};
use fsnet_core::{
    execute_attack, recovery_run, AttackPlan, DegreeCounts, DegreeDistribution, Graph, Mode, ModelParams, RecoveryPoint,
    RecoveryTrace, RngStream,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{
    out_dir, thread_pool, AttackArgs, CompareArgs, EvolveArgs, FitArgs, FormatArg, RecoverArgs, ReplayArgs, StrategyArg,
};
use crate::config::{ModeArg, RunConfig, UsageError};
use crate::io::{collapse, load_edge_list, load_temporal, LoadedGraph};
use crate::output::Artifacts;

type Model = Box<dyn Evolution + Send>;

/// Fresh `G(n, m)` start evolved by the configured dynamics.
pub fn build_model(cfg: &RunConfig, seed: u64) -> Result<Model> {
    let rng = RngStream::new(seed);
    let mut graph_rng = rng.clone();
    let graph = Graph::gnm_random(cfg.n, cfg.m, &mut graph_rng)?;
    let params = cfg.params();
    let queued = cfg.queued_draws.into();
    Ok(match cfg.mode {
        ModeArg::Discrete => Box::new(DiscreteModel::new(graph, params, rng.fork(1))?.with_queued_draws(queued)),
        ModeArg::Continuous => Box::new(ContinuousModel::new(graph, params, rng.fork(1))?.with_queued_draws(queued)),
    })
}

fn per_seed<T: Send>(cfg: &RunConfig, threads: Option<usize>, f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
    thread_pool(threads)?.install(|| cfg.seeds.par_iter().map(|&s| f(s).with_context(|| format!("seed {s}"))).collect())
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, n) = xs.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Mean over the values present, `None` when there are none.
fn mean_some(xs: impl IntoIterator<Item = Option<f64>>) -> Option<f64> {
    let m = mean(xs.into_iter().flatten());
    (!m.is_nan()).then_some(m)
}

// ---------------------------------------------------------------- evolve

#[derive(Debug, Clone, Serialize)]
pub struct StrandedSample {
    pub seed: u64,
    pub iteration: u64,
    pub time: f64,
    pub stranded_entries: usize,
    pub stranded_nodes: usize,
    pub edges: usize,
    pub p_lcc: f64,
}

#[derive(Debug, Clone)]
pub struct EvolveRun {
    pub seed: u64,
    /// Pooled counts over the trailing samples.
    pub counts: DegreeCounts,
    pub samples: Vec<StrandedSample>,
}

pub fn evolve_seed(cfg: &RunConfig, seed: u64) -> Result<EvolveRun> {
    let mut model = build_model(cfg, seed)?;
    let points = cfg.sample_points();
    let pool_from = points.len() - cfg.pool as usize;
    let mut counts = DegreeCounts::zeros(cfg.n);
    let mut samples = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        model.advance_by(p - model.iterations());
        let g = model.graph();
        let q = &model.state().queue;
        samples.push(StrandedSample {
            seed,
            iteration: p,
            time: model.clock(),
            stranded_entries: q.stranded_count(),
            stranded_nodes: q.stranded_nodes(),
            edges: g.edge_count(),
            p_lcc: fsnet_core::metrics::lcc_fraction(g),
        });
        if i >= pool_from {
            counts.merge(&g.degree_counts());
        }
    }
    Ok(EvolveRun { seed, counts, samples })
}

#[derive(Serialize)]
struct Divergence {
    seed: u64,
    kl: f64,
    js: f64,
}

#[derive(Serialize)]
struct DivergenceReport {
    runs: Vec<Divergence>,
    mean_kl: f64,
    mean_js: f64,
    /// Divergence of the seed-averaged histogram.
    averaged: Averaged,
}

#[derive(Serialize)]
struct Averaged {
    kl: f64,
    js: f64,
}

pub fn evolve(args: &EvolveArgs) -> Result<Artifacts> {
    let cfg = args.model.resolve()?;
    let mut out = Artifacts::create(&cfg.out_dir, &cfg)?;
    let runs = per_seed(&cfg, args.model.threads, |s| evolve_seed(&cfg, s))?;
    let theory = stationary_closed_form(&cfg.params());
    let dists: Vec<DegreeDistribution> =
        runs.iter().map(|r| DegreeDistribution::from_counts(&r.counts)).collect::<Result<_, _>>()?;

    for (run, dist) in runs.iter().zip(&dists) {
        let rows = (0..cfg.n).map(|k| (k, run.counts.get(k), dist.get(k)));
        out.csv(&format!("histogram_seed_{}.csv", run.seed), &["degree", "count", "fraction"], rows)?;
    }
    let averaged: Vec<f64> = (0..cfg.n).map(|k| mean(dists.iter().map(|d| d.get(k)))).collect();
    out.csv(
        "histogram_mean.csv",
        &["degree", "fraction", "theory"],
        (0..cfg.n).map(|k| (k, averaged[k], theory.get(k))),
    )?;
    out.csv("theory.csv", &["degree", "probability"], (0..cfg.n).map(|k| (k, theory.get(k))))?;
    out.csv(
        "stranded.csv",
        &["seed", "iteration", "time", "stranded_entries", "stranded_nodes", "edges", "p_lcc"],
        runs.iter().flat_map(|r| r.samples.iter().cloned()),
    )?;

    let div: Vec<Divergence> = runs
        .iter()
        .zip(&dists)
        .map(|(r, d)| {
            let rep = theory::compare(d, &theory, cfg.n);
            Divergence { seed: r.seed, kl: rep.kl, js: rep.js }
        })
        .collect();
    let avg = theory::compare(&DegreeDistribution::new(averaged)?, &theory, cfg.n);
    let report = DivergenceReport {
        mean_kl: mean(div.iter().map(|d| d.kl)),
        mean_js: mean(div.iter().map(|d| d.js)),
        runs: div,
        averaged: Averaged { kl: avg.kl, js: avg.js },
    };
    out.json("divergence.json", &report)?;
    Ok(out)
}

// ---------------------------------------------------------------- attack

#[derive(Debug, Clone, Serialize)]
pub struct AttackRow {
    pub seed: u64,
    pub ratio: f64,
    pub removed: usize,
    pub p_lcc: f64,
    pub relative_l: Option<f64>,
    pub k_core_max: Option<usize>,
    pub modularity: Option<f64>,
    pub clustering: Option<f64>,
}

#[derive(Serialize)]
struct AttackMean {
    ratio: f64,
    p_lcc: f64,
    relative_l: Option<f64>,
    k_core_max: Option<f64>,
    modularity: Option<f64>,
    clustering: Option<f64>,
}

#[derive(Serialize)]
struct AttackReport<'a> {
    strategy: StrategyArg,
    table: Vec<AttackMean>,
    runs: &'a [AttackRow],
}

#[derive(Serialize)]
struct WithPlan<'a, P: Serialize> {
    #[serde(flatten)]
    run: &'a RunConfig,
    #[serde(flatten)]
    plan: P,
}

/// Burns in one network and attacks a copy of it at every ratio.
pub fn attack_seed(cfg: &RunConfig, strategy: StrategyArg, ratios: &[f64], seed: u64) -> Result<Vec<AttackRow>> {
    let mut model = build_model(cfg, seed)?;
    model.advance_by(cfg.horizon);
    let baseline = avg_shortest_path(model.graph()).ok();
    ratios
        .iter()
        .map(|&ratio| {
            let plan = AttackPlan::new(strategy.into(), ratio, seed)?;
            let mut g = model.graph().clone();
            let removed = execute_attack(&mut g, &plan)?.len();
            let mut rng = RngStream::with_stream(seed, 0x6d6f64);
            let rec = MetricsRecord::observe(&g, model.stranded(), model.clock(), cfg.horizon, baseline, MetricLevel::Full, &mut rng);
            Ok(AttackRow {
                seed,
                ratio,
                removed,
                p_lcc: rec.p_lcc,
                relative_l: rec.relative_l,
                k_core_max: rec.max_k_core,
                modularity: rec.modularity,
                clustering: rec.clustering,
            })
        })
        .collect()
}

fn check_ratio(r: f64) -> Result<(), UsageError> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(UsageError::new("ratios", format!("{r} is outside [0, 1)")))
    }
}

pub fn attack(args: &AttackArgs) -> Result<Artifacts> {
    let cfg = args.model.resolve()?;
    args.ratios.iter().try_for_each(|&r| check_ratio(r))?;
    #[derive(Serialize)]
    struct Plan<'a> {
        strategy: StrategyArg,
        ratios: &'a [f64],
    }
    let config = WithPlan { run: &cfg, plan: Plan { strategy: args.strategy, ratios: &args.ratios } };
    let mut out = Artifacts::create(&cfg.out_dir, &config)?;
    let per = per_seed(&cfg, args.model.threads, |s| attack_seed(&cfg, args.strategy, &args.ratios, s))?;
    let rows: Vec<AttackRow> = per.into_iter().flatten().collect();
    out.csv(
        "attack.csv",
        &["seed", "ratio", "removed", "p_lcc", "relative_l", "k_core_max", "modularity", "clustering"],
        rows.iter(),
    )?;
    let table = args
        .ratios
        .iter()
        .enumerate()
        .map(|(i, &ratio)| {
            let at: Vec<&AttackRow> = rows.iter().skip(i).step_by(args.ratios.len()).collect();
            AttackMean {
                ratio,
                p_lcc: mean(at.iter().map(|r| r.p_lcc)),
                relative_l: mean_some(at.iter().map(|r| r.relative_l)),
                k_core_max: mean_some(at.iter().map(|r| r.k_core_max.map(|k| k as f64))),
                modularity: mean_some(at.iter().map(|r| r.modularity)),
                clustering: mean_some(at.iter().map(|r| r.clustering)),
            }
        })
        .collect();
    out.json("attack.json", &AttackReport { strategy: args.strategy, table, runs: &rows })?;
    Ok(out)
}

// ---------------------------------------------------------------- recover

#[derive(Serialize)]
struct PointRow {
    t: u64,
    time: f64,
    p_lcc: f64,
    relative_l: Option<f64>,
    stranded: f64,
}

impl From<&RecoveryPoint> for PointRow {
    fn from(p: &RecoveryPoint) -> Self {
        Self { t: p.t, time: p.time, p_lcc: p.p_lcc, relative_l: p.relative_l, stranded: p.stranded as f64 }
    }
}

/// Threshold on the largest-component fraction counted as recovered.
pub const LCC_RECOVERED: f64 = 0.95;
/// Band around 1 counted as a recovered path length.
pub const PATH_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct TraceSummary {
    pub post_attack_p_lcc: f64,
    pub final_decile_p_lcc: f64,
    pub lcc_recovery_time: Option<u64>,
    pub path_peak_time: Option<u64>,
    pub path_peak: Option<f64>,
    pub path_recovery_time: Option<u64>,
}

impl TraceSummary {
    pub fn of(trace: &RecoveryTrace) -> Self {
        let peak = trace.path_peak();
        Self {
            post_attack_p_lcc: trace.post_attack_p_lcc(),
            final_decile_p_lcc: trace.final_decile_p_lcc(),
            lcc_recovery_time: trace.lcc_recovery_time(LCC_RECOVERED),
            path_peak_time: peak.map(|p| p.0),
            path_peak: peak.map(|p| p.1),
            path_recovery_time: trace.path_recovery_time(PATH_TOLERANCE),
        }
    }
}

#[derive(Serialize)]
struct SeedSummary {
    seed: u64,
    removed: usize,
    baseline: f64,
    #[serde(flatten)]
    summary: TraceSummary,
}

#[derive(Serialize)]
struct RecoverReport {
    strategy: StrategyArg,
    ratio: f64,
    runs: Vec<SeedSummary>,
    mean: TraceSummary,
}

pub fn recover_seed(cfg: &RunConfig, plan: &AttackPlan, span: u64, every: u64, seed: u64) -> Result<RecoveryTrace> {
    let mut model = build_model(cfg, seed)?;
    model.advance_by(cfg.horizon);
    let plan = AttackPlan::new(plan.strategy, plan.ratio, seed)?;
    Ok(recovery_run(&mut *model, &plan, span, every)?)
}

/// Pointwise mean of traces sampled on the same schedule.
pub fn mean_trace(traces: &[RecoveryTrace]) -> RecoveryTrace {
    let points = (0..traces[0].points.len())
        .map(|i| {
            let at = || traces.iter().map(move |t| &t.points[i]);
            RecoveryPoint {
                t: traces[0].points[i].t,
                time: mean(at().map(|p| p.time)),
                p_lcc: mean(at().map(|p| p.p_lcc)),
                relative_l: mean_some(at().map(|p| p.relative_l)),
                stranded: 0,
            }
        })
        .collect();
    RecoveryTrace { baseline: mean(traces.iter().map(|t| t.baseline)), removed: Vec::new(), points }
}

pub fn recover(args: &RecoverArgs) -> Result<Artifacts> {
    let cfg = args.model.resolve()?;
    check_ratio(args.ratio).map_err(|e| UsageError::new("ratio", e.message))?;
    let span = args.recover_for.unwrap_or(cfg.horizon);
    if span == 0 {
        return Err(UsageError::new("recover-for", "must be positive").into());
    }
    let every = args.every.unwrap_or((span / 200).max(1));
    if every == 0 {
        return Err(UsageError::new("every", "must be positive").into());
    }
    #[derive(Serialize)]
    struct Plan {
        strategy: StrategyArg,
        ratio: f64,
        recover_for: u64,
        every: u64,
    }
    let config = WithPlan { run: &cfg, plan: Plan { strategy: args.strategy, ratio: args.ratio, recover_for: span, every } };
    let mut out = Artifacts::create(&cfg.out_dir, &config)?;
    let plan = AttackPlan::new(args.strategy.into(), args.ratio, 0)?;
    let traces = per_seed(&cfg, args.model.threads, |s| recover_seed(&cfg, &plan, span, every, s))?;
    let header = ["t", "time", "p_lcc", "relative_l", "stranded"];
    for (seed, trace) in cfg.seeds.iter().zip(&traces) {
        out.csv(&format!("recovery_seed_{seed}.csv"), &header, trace.points.iter().map(PointRow::from))?;
    }
    let avg = mean_trace(&traces);
    let mean_rows = avg.points.iter().enumerate().map(|(i, p)| PointRow {
        stranded: mean(traces.iter().map(|t| t.points[i].stranded as f64)),
        ..PointRow::from(p)
    });
    out.csv("recovery_mean.csv", &header, mean_rows)?;
    let runs = cfg
        .seeds
        .iter()
        .zip(&traces)
        .map(|(&seed, t)| SeedSummary { seed, removed: t.removed.len(), baseline: t.baseline, summary: TraceSummary::of(t) })
        .collect();
    out.json(
        "recover.json",
        &RecoverReport { strategy: args.strategy, ratio: args.ratio, runs, mean: TraceSummary::of(&avg) },
    )?;
    Ok(out)
}

// ---------------------------------------------------------------- fit

#[derive(Serialize)]
struct Summary {
    nodes: usize,
    edges: usize,
    p_lcc: f64,
    avg_path: Option<f64>,
    clustering: f64,
}

impl From<GraphSummary> for Summary {
    fn from(s: GraphSummary) -> Self {
        Self { nodes: s.nodes, edges: s.edges, p_lcc: s.p_lcc, avg_path: s.avg_path, clustering: s.clustering }
    }
}

#[derive(Serialize)]
struct FitBody {
    a: f64,
    c: f64,
    pi1: f64,
    residual: f64,
    degenerate: bool,
}

impl From<&FitResult> for FitBody {
    fn from(f: &FitResult) -> Self {
        Self { a: f.a, c: f.c, pi1: f.pi1, residual: f.residual, degenerate: f.degenerate }
    }
}

fn load_graph(path: &Path, format: FormatArg) -> Result<LoadedGraph> {
    Ok(match format {
        FormatArg::EdgeList => load_edge_list(path)?,
        FormatArg::Temporal => collapse(&load_temporal(path, true)?),
    })
}

/// Degree mass over `k >= 1`, the support the fit uses.
fn positive_mass(dist: &DegreeDistribution) -> Vec<f64> {
    let total: f64 = (1..dist.len()).map(|k| dist.get(k)).sum();
    (0..dist.len()).map(|k| if k == 0 || total == 0.0 { 0.0 } else { dist.get(k) / total }).collect()
}

fn model_law(n: usize, a: f64, c: f64) -> Result<DegreeDistribution> {
    Ok(stationary_closed_form(&ModelParams::new(n, a, c, Mode::Discrete)?))
}

pub fn fit(args: &FitArgs) -> Result<Artifacts> {
    let loaded = load_graph(&args.path, args.format)?;
    #[derive(Serialize)]
    struct Config<'a> {
        path: &'a Path,
        format: FormatArg,
        out_dir: PathBuf,
    }
    let dir = out_dir(&args.out);
    let mut out = Artifacts::create(&dir, &Config { path: &args.path, format: args.format, out_dir: dir.clone() })?;
    let dist = loaded.graph.degree_histogram()?;
    let fit = fit_params(&dist).with_context(|| format!("fitting {}", args.path.display()))?;
    #[derive(Serialize)]
    struct Report {
        nodes: usize,
        edges: usize,
        duplicate_edges: usize,
        self_loops: usize,
        #[serde(flatten)]
        fit: FitBody,
    }
    out.json(
        "fit.json",
        &Report {
            nodes: loaded.graph.node_count(),
            edges: loaded.graph.edge_count(),
            duplicate_edges: loaded.duplicate_edges,
            self_loops: loaded.self_loops,
            fit: FitBody::from(&fit),
        },
    )?;
    let n = loaded.graph.node_count();
    let emp = positive_mass(&dist);
    let law = model_law(n, fit.a, fit.c)?;
    let kmax = emp.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    out.csv("fit.csv", &["degree", "empirical", "model"], (1..=kmax).map(|k| (k, emp[k], law.get(k))))?;
    Ok(out)
}

// ---------------------------------------------------------------- compare

pub fn compare(args: &CompareArgs) -> Result<Artifacts> {
    let loaded = load_graph(&args.path, args.format)?;
    let real = &loaded.graph;
    let n = real.node_count();
    let mode: Mode = args.mode.into();
    let dist = real.degree_histogram()?;
    let fitted = match (args.a, args.c) {
        (Some(a), Some(c)) => {
            let law = model_law(n, a, c).map_err(|e| UsageError::new("a", e.to_string()))?;
            FitResult { a, c, pi1: law.get(1), residual: model_residual(&dist, a, c)?, degenerate: false }
        }
        _ => fit_params(&dist).with_context(|| format!("fitting {}", args.path.display()))?,
    };
    let burn_in = args.burn_in.unwrap_or_else(|| CompareOptions::default_burn_in(mode, n));
    if args.snapshots == 0 {
        return Err(UsageError::new("snapshots", "must be positive").into());
    }
    if args.spacing == 0 {
        return Err(UsageError::new("spacing", "must be positive").into());
    }
    #[derive(Serialize)]
    struct Config<'a> {
        path: &'a Path,
        format: FormatArg,
        mode: ModeArg,
        seeds: &'a [u64],
        a: Option<f64>,
        c: Option<f64>,
        burn_in: u64,
        snapshots: u64,
        spacing: u64,
        out_dir: PathBuf,
    }
    let dir = out_dir(&args.out);
    let config = Config {
        path: &args.path,
        format: args.format,
        mode: args.mode,
        seeds: &args.seeds.0,
        a: args.a,
        c: args.c,
        burn_in,
        snapshots: args.snapshots,
        spacing: args.spacing,
        out_dir: dir.clone(),
    };
    let mut out = Artifacts::create(&dir, &config)?;
    let runs = thread_pool(args.threads)?.install(|| {
        args.seeds
            .0
            .par_iter()
            .map(|&seed| {
                let opts =
                    CompareOptions { burn_in: Some(burn_in), snapshots: args.snapshots, spacing: args.spacing, ..CompareOptions::new(mode, seed) };
                simulate_match(real, &fitted, &opts).with_context(|| format!("seed {seed}"))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    #[derive(Serialize)]
    struct Run {
        seed: u64,
        kl: f64,
        js: f64,
        model: Summary,
    }
    #[derive(Serialize)]
    struct Mean {
        kl: f64,
        js: f64,
        edges: f64,
        p_lcc: f64,
        avg_path: Option<f64>,
        clustering: f64,
    }
    #[derive(Serialize)]
    struct Report {
        real: Summary,
        fit: FitBody,
        runs: Vec<Run>,
        mean: Mean,
    }
    let mean_row = Mean {
        kl: mean(runs.iter().map(|r| r.kl)),
        js: mean(runs.iter().map(|r| r.js)),
        edges: mean(runs.iter().map(|r| r.model.edges as f64)),
        p_lcc: mean(runs.iter().map(|r| r.model.p_lcc)),
        avg_path: mean_some(runs.iter().map(|r| r.model.avg_path)),
        clustering: mean(runs.iter().map(|r| r.model.clustering)),
    };
    let report = Report {
        real: runs[0].real.into(),
        fit: FitBody::from(&fitted),
        runs: args.seeds.0.iter().zip(&runs).map(|(&seed, r)| Run { seed, kl: r.kl, js: r.js, model: r.model.into() }).collect(),
        mean: mean_row,
    };
    out.json("compare.json", &report)?;
    let rows = (0..n).map(|k| (k, dist.get(k), mean(runs.iter().map(|r| r.model_distribution.get(k)))));
    out.csv("compare.csv", &["degree", "real", "model"], rows)?;
    Ok(out)
}

// ---------------------------------------------------------------- replay

pub fn replay(args: &ReplayArgs) -> Result<Artifacts> {
    for &l in &args.lifetimes {
        if !(l > 0.0 && l.is_finite()) {
            return Err(UsageError::new("lifetimes", format!("{l} is not a positive finite lifetime")).into());
        }
    }
    let events = load_temporal(&args.path, args.sort)?;
    #[derive(Serialize)]
    struct Config<'a> {
        path: &'a Path,
        lifetimes: &'a [f64],
        sort: bool,
        out_dir: PathBuf,
    }
    let dir = out_dir(&args.out);
    let mut out =
        Artifacts::create(&dir, &Config { path: &args.path, lifetimes: &args.lifetimes, sort: args.sort, out_dir: dir.clone() })?;
    let results = thread_pool(args.threads)?.install(|| {
        args.lifetimes
            .par_iter()
            .map(|&l| {
                let r = temporal_replay(&events.list, l)?;
                Ok((l, residence_times(&r.trajectories), transition_direction(&r.trajectories), r))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    out.csv(
        "residence.csv",
        &["lifetime", "degree", "mean_residence"],
        results.iter().flat_map(|(l, res, _, _)| res.iter().map(move |(&k, &t)| (*l, k, t))),
    )?;
    out.csv(
        "direction.csv",
        &["lifetime", "bin", "lower", "upper", "p_down", "pooled", "transitions"],
        results.iter().flat_map(|(l, _, dir, _)| {
            dir.iter().map(move |b| (*l, b.index, b.lower, b.upper, b.p_down, b.pooled, b.transitions))
        }),
    )?;
    #[derive(Serialize)]
    struct Lifetime {
        lifetime: f64,
        accepted: usize,
        ignored: usize,
        removed: usize,
        start: f64,
        end: f64,
        transitions: u64,
        p_down: f64,
    }
    #[derive(Serialize)]
    struct Report {
        nodes: usize,
        events: usize,
        self_loops: usize,
        lifetimes: Vec<Lifetime>,
    }
    let lifetimes = results
        .iter()
        .map(|(l, _, dir, r)| {
            let transitions: u64 = dir.iter().map(|b| b.transitions).sum();
            let downs: f64 = dir.iter().map(|b| b.pooled * b.transitions as f64).sum();
            Lifetime {
                lifetime: *l,
                accepted: r.accepted,
                ignored: r.ignored,
                removed: r.removed,
                start: r.start,
                end: r.end,
                transitions,
                p_down: if transitions == 0 { f64::NAN } else { downs / transitions as f64 },
            }
        })
        .collect();
    out.json(
        "replay.json",
        &Report { nodes: events.list.node_count(), events: events.list.len(), self_loops: events.self_loops, lifetimes },
    )?;
    Ok(out)
}
