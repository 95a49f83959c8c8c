use super::FitResult;
use crate::distribution::{DegreeCounts, DegreeDistribution};
use crate::dynamics::{ContinuousModel, DiscreteModel, Evolution};
use crate::error::Result;
use crate::graph::Graph;
use crate::metrics::{avg_shortest_path, clustering_coefficient, lcc_fraction};
use crate::params::{Mode, ModelParams};
use crate::rng::RngStream;
use crate::theory::compare;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub mode: Mode,
    /// Iterations before the first snapshot; `None` uses the mode default.
    pub burn_in: Option<u64>,
    /// Degree histograms averaged after burn-in.
    pub snapshots: u64,
    /// Iterations between snapshots.
    pub spacing: u64,
    pub seed: u64,
}

impl CompareOptions {
    pub fn new(mode: Mode, seed: u64) -> Self {
        Self { mode, burn_in: None, snapshots: 1, spacing: 1, seed }
    }

    /// `10^5` sweeps, or `8·10^4` events per node.
    pub fn default_burn_in(mode: Mode, n: usize) -> u64 {
        match mode {
            Mode::Discrete => 100_000,
            Mode::Continuous => 80_000 * n as u64,
        }
    }
}

/// Structural summary of one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub p_lcc: f64,
    pub avg_path: Option<f64>,
    pub clustering: f64,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        Self {
            nodes: g.live_count(),
            edges: g.edge_count(),
            p_lcc: lcc_fraction(g),
            avg_path: avg_shortest_path(g).ok(),
            clustering: clustering_coefficient(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// `KL(model ‖ real)` on smoothed distributions.
    pub kl: f64,
    pub js: f64,
    pub real: GraphSummary,
    pub model: GraphSummary,
    pub model_distribution: DegreeDistribution,
}

/// Evolves a model network of the real network's size with the fitted
/// parameters from `G(n, 2n)` and compares the two.
pub fn simulate_match(real: &Graph, fit: &FitResult, opts: &CompareOptions) -> Result<Comparison> {
    let n = real.node_count();
    let params = ModelParams::new(n, fit.a, fit.c, opts.mode)?;
    let mut rng = RngStream::new(opts.seed);
    let start = Graph::gnm_random(n, 2 * n, &mut rng)?;
    let burn_in = opts.burn_in.unwrap_or_else(|| CompareOptions::default_burn_in(opts.mode, n));
    let mut model: alloc::boxed::Box<dyn Evolution> = match opts.mode {
        Mode::Discrete => alloc::boxed::Box::new(DiscreteModel::new(start, params, rng.fork(1))?),
        Mode::Continuous => alloc::boxed::Box::new(ContinuousModel::new(start, params, rng.fork(1))?),
    };
    model.advance_by(burn_in);
    let mut counts = DegreeCounts::zeros(n);
    for i in 0..opts.snapshots.max(1) {
        if i > 0 {
            model.advance_by(opts.spacing.max(1));
        }
        counts.merge(&model.graph().degree_counts());
    }
    let model_distribution = DegreeDistribution::from_counts(&counts)?;
    let real_distribution = real.degree_histogram()?;
    let report = compare(&model_distribution, &real_distribution, n);
    Ok(Comparison {
        kl: report.kl,
        js: report.js,
        real: GraphSummary::of(real),
        model: GraphSummary::of(model.graph()),
        model_distribution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory;

    #[test]
    fn self_comparison_is_zero() {
        let g = Graph::gnm_random(80, 160, &mut RngStream::new(1)).unwrap();
        let d = g.degree_histogram().unwrap();
        let r = theory::compare(&d, &d, 80);
        assert!(r.kl.abs() < 1e-12 && r.js.abs() < 1e-12);
    }

    #[test]
    fn short_match_runs() {
        let real = Graph::gnm_random(60, 150, &mut RngStream::new(2)).unwrap();
        let fit = FitResult { a: 1.0, c: 1.0, pi1: 0.0, residual: 0.0, degenerate: false };
        for mode in [Mode::Discrete, Mode::Continuous] {
            let opts = CompareOptions { burn_in: Some(200), snapshots: 3, spacing: 10, ..CompareOptions::new(mode, 3) };
            let c = simulate_match(&real, &fit, &opts).unwrap();
            assert_eq!(c.model.nodes, 60);
            assert!(c.kl >= 0.0 && (0.0..=1.0).contains(&c.js));
            assert_eq!(c.real, GraphSummary::of(&real));
        }
    }
}
