//! Degree dynamics in discrete and continuous time.

mod continuous;
mod discrete;

use alloc::vec::Vec;

pub use continuous::{ClockRefresh, ContinuousModel, EventAction, EventRecord, EventSchedule};
pub use discrete::{decide, Decision, DiscreteModel, SweepReport};

use crate::distribution::DegreeCounts;
use crate::graph::{Graph, NodeId};
use crate::metrics::{MetricLevel, MetricsRecord};
use crate::params::ModelParams;
use crate::queue::MatchQueue;
use crate::rng::RngStream;

/// Everything a running network owns: topology, pending demands, iteration
/// counter and its random stream.
#[derive(Debug, Clone)]
pub struct EvolutionState {
    pub graph: Graph,
    pub queue: MatchQueue,
    pub step: u64,
    pub rng: RngStream,
}

impl EvolutionState {
    pub fn new(graph: Graph, rng: RngStream) -> Self {
        let queue = MatchQueue::new(graph.node_count());
        Self { graph, queue, step: 0, rng }
    }

    /// Live nodes with degree 0 must be waiting in the queue, and no degree
    /// exceeds `max_degree`.
    pub fn degrees_within_bounds(&self, max_degree: usize) -> bool {
        self.graph.live_nodes().all(|v| {
            let k = self.graph.degree(v);
            k <= max_degree && (k >= 1 || self.queue.pending(v) > 0)
        })
    }
}

/// Whether a node with a waiting queue entry still draws increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueuedDraws {
    /// Queued nodes keep fluctuating like any other node.
    #[default]
    Fluctuate,
    /// A node with a pending entry skips the increase branch until matched.
    HoldIncrease,
}

impl QueuedDraws {
    pub(crate) fn blocks_increase(self, pending: u32) -> bool {
        self == Self::HoldIncrease && pending > 0
    }
}

/// What to record while running.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampling {
    /// Sample after every `every` iterations (and after the last one).
    pub every: u64,
    pub metrics: MetricLevel,
    /// Also keep a degree histogram per sample.
    pub histograms: bool,
    /// Seed for the community optimiser used by [`MetricLevel::Full`].
    pub seed: u64,
}

impl Sampling {
    pub fn every(every: u64) -> Self {
        Self { every: every.max(1), metrics: MetricLevel::Basic, histograms: true, seed: 0 }
    }

    pub fn with_metrics(self, metrics: MetricLevel) -> Self {
        Self { metrics, ..self }
    }

    pub fn with_histograms(self, histograms: bool) -> Self {
        Self { histograms, ..self }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSeries {
    pub records: Vec<MetricsRecord>,
    /// `(iteration, counts)` per sample, when requested.
    pub histograms: Vec<(u64, DegreeCounts)>,
}

/// A network whose degrees evolve one iteration at a time: a sweep over all
/// nodes in discrete time, or a single fired event in continuous time.
pub trait Evolution {
    fn params(&self) -> &ModelParams;

    fn state(&self) -> &EvolutionState;

    fn state_mut(&mut self) -> &mut EvolutionState;

    /// Performs one iteration.
    fn advance(&mut self);

    /// Model clock: the sweep count in discrete time, simulated time in
    /// continuous time.
    fn clock(&self) -> f64;

    /// Hook for degree changes made outside the dynamics (node removal).
    fn degrees_changed(&mut self, nodes: &[NodeId]);

    fn graph(&self) -> &Graph {
        &self.state().graph
    }

    fn iterations(&self) -> u64 {
        self.state().step
    }

    fn stranded(&self) -> usize {
        self.state().queue.stranded_count()
    }

    fn advance_by(&mut self, iterations: u64) {
        for _ in 0..iterations {
            self.advance();
        }
    }

    /// Runs `iterations` more iterations, sampling as configured. The path
    /// length baseline is the state at call time.
    fn run(&mut self, iterations: u64, sampling: &Sampling) -> RunSeries {
        let mut series = RunSeries::default();
        if iterations == 0 {
            return series;
        }
        let mut metric_rng = RngStream::with_stream(sampling.seed, 0x6d6f64);
        let baseline = match sampling.metrics {
            MetricLevel::Full => crate::metrics::avg_shortest_path(self.graph()).ok(),
            MetricLevel::Basic => None,
        };
        let every = sampling.every.max(1);
        for done in 1..=iterations {
            self.advance();
            if done % every == 0 || done == iterations {
                let record = MetricsRecord::observe(
                    self.graph(),
                    self.stranded(),
                    self.clock(),
                    self.iterations(),
                    baseline,
                    sampling.metrics,
                    &mut metric_rng,
                );
                series.records.push(record);
                if sampling.histograms {
                    series.histograms.push((self.iterations(), self.graph().degree_counts()));
                }
            }
        }
        series
    }
}
