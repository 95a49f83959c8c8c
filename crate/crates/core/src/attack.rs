//! Node-removal attacks and recovery traces.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dynamics::Evolution;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::metrics::{avg_shortest_path, betweenness, lcc_fraction};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackStrategy {
    Random,
    Degree,
    Betweenness,
}

impl AttackStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Random => "random",
            Self::Degree => "degree",
            Self::Betweenness => "betweenness",
        }
    }
}

impl fmt::Display for AttackStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AttackStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Self::Random),
            "degree" => Ok(Self::Degree),
            "betweenness" => Ok(Self::Betweenness),
            _ => Err(Error::param("strategy", alloc::format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackPlan {
    pub strategy: AttackStrategy,
    /// Fraction of live nodes to remove, in `[0, 1)`.
    pub ratio: f64,
    pub seed: u64,
}

impl AttackPlan {
    pub fn new(strategy: AttackStrategy, ratio: f64, seed: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&ratio) {
            return Err(Error::param("ratio", alloc::format!("must lie in [0, 1), got {ratio}")));
        }
        Ok(Self { strategy, ratio, seed })
    }

    /// Number of nodes removed from a graph with `live` live nodes.
    pub fn removal_count(&self, live: usize) -> usize {
        libm::floor(self.ratio * live as f64) as usize
    }
}

fn arg_max_lowest_id(g: &Graph, score: impl Fn(NodeId) -> f64) -> Option<NodeId> {
    let mut best: Option<(NodeId, f64)> = None;
    for v in g.live_nodes() {
        let s = score(v);
        if best.map_or(true, |(_, b)| s > b) {
            best = Some((v, s));
        }
    }
    best.map(|(v, _)| v)
}

/// Removes nodes per `plan`; returns the removed nodes in removal order
/// together with every surviving node whose degree changed.
fn attack_detailed(g: &mut Graph, plan: &AttackPlan) -> Result<(Vec<NodeId>, Vec<NodeId>)> {
    let plan = AttackPlan::new(plan.strategy, plan.ratio, plan.seed)?;
    let live = g.live_count();
    let count = plan.removal_count(live);
    if count > 0 && count >= live {
        return Err(Error::param("ratio", alloc::format!("would remove {count} of {live} live nodes")));
    }
    let mut removed = Vec::with_capacity(count);
    let mut affected = Vec::new();
    let mut order: Vec<NodeId> = Vec::new();
    if plan.strategy == AttackStrategy::Random {
        order = g.live_nodes().collect();
        let mut rng = RngStream::with_stream(plan.seed, 0x61747461636b);
        // Partial Fisher-Yates: the first `count` slots are a uniform sample.
        for i in 0..count {
            let j = i + rng.below(order.len() - i);
            order.swap(i, j);
        }
        order.truncate(count);
    }
    for i in 0..count {
        let target = match plan.strategy {
            AttackStrategy::Random => order[i],
            AttackStrategy::Degree => arg_max_lowest_id(g, |v| g.degree(v) as f64).expect("live node"),
            AttackStrategy::Betweenness => {
                let b = betweenness(g);
                arg_max_lowest_id(g, |v| b[v as usize]).expect("live node")
            }
        };
        affected.extend(g.remove_node(target)?);
        removed.push(target);
    }
    affected.sort_unstable();
    affected.dedup();
    affected.retain(|&v| g.is_alive(v));
    Ok((removed, affected))
}

/// Executes an attack in place and returns the removed nodes in order.
///
/// Targeted strategies recompute their score after every removal; ties go to
/// the lowest id.
pub fn execute_attack(g: &mut Graph, plan: &AttackPlan) -> Result<Vec<NodeId>> {
    attack_detailed(g, plan).map(|(removed, _)| removed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryPoint {
    /// Iterations since the attack.
    pub t: u64,
    /// Model clock at the sample.
    pub time: f64,
    pub p_lcc: f64,
    pub relative_l: Option<f64>,
    pub stranded: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryTrace {
    /// Mean path length just before the attack.
    pub baseline: f64,
    pub removed: Vec<NodeId>,
    pub points: Vec<RecoveryPoint>,
}

impl RecoveryTrace {
    /// Largest-component fraction right after the attack.
    pub fn post_attack_p_lcc(&self) -> f64 {
        self.points[0].p_lcc
    }

    /// Mean largest-component fraction over the last tenth of the samples.
    pub fn final_decile_p_lcc(&self) -> f64 {
        let tail = &self.points[self.points.len() - (self.points.len() / 10).max(1)..];
        tail.iter().map(|p| p.p_lcc).sum::<f64>() / tail.len() as f64
    }

    /// First sample time with `p_lcc >= threshold`.
    pub fn lcc_recovery_time(&self, threshold: f64) -> Option<u64> {
        self.points.iter().find(|p| p.p_lcc >= threshold).map(|p| p.t)
    }

    /// Largest relative path length and when it occurred.
    pub fn path_peak(&self) -> Option<(u64, f64)> {
        self.points
            .iter()
            .filter_map(|p| p.relative_l.map(|l| (p.t, l)))
            .fold(None, |best, (t, l)| match best {
                Some((_, b)) if b >= l => best,
                _ => Some((t, l)),
            })
    }

    /// First sample after the path-length peak with `|L - 1| <= tolerance`,
    /// provided the peak exceeded `1 + tolerance`.
    pub fn path_recovery_time(&self, tolerance: f64) -> Option<u64> {
        let (peak_t, peak) = self.path_peak()?;
        if peak <= 1.0 + tolerance {
            return None;
        }
        self.points
            .iter()
            .filter(|p| p.t > peak_t)
            .find(|p| p.relative_l.is_some_and(|l| (l - 1.0).abs() <= tolerance))
            .map(|p| p.t)
    }
}

fn sample<E: Evolution + ?Sized>(model: &E, t: u64, baseline: f64) -> RecoveryPoint {
    let g = model.graph();
    RecoveryPoint {
        t,
        time: model.clock(),
        p_lcc: lcc_fraction(g),
        relative_l: avg_shortest_path(g).ok().map(|l| l / baseline),
        stranded: model.stranded(),
    }
}

/// Attacks a running network and follows its recovery for `horizon`
/// iterations, sampling right after the attack and every `every` iterations.
pub fn recovery_run<E: Evolution + ?Sized>(
    model: &mut E,
    plan: &AttackPlan,
    horizon: u64,
    every: u64,
) -> Result<RecoveryTrace> {
    let baseline = avg_shortest_path(model.graph())?;
    let (removed, mut affected) = attack_detailed(&mut model.state_mut().graph, plan)?;
    affected.extend_from_slice(&removed);
    model.degrees_changed(&affected);
    let every = every.max(1);
    let mut points = Vec::with_capacity((horizon / every) as usize + 2);
    points.push(sample(model, 0, baseline));
    for t in 1..=horizon {
        model.advance();
        if t % every == 0 || t == horizon {
            points.push(sample(model, t, baseline));
        }
    }
    Ok(RecoveryTrace { baseline, removed, points })
}
