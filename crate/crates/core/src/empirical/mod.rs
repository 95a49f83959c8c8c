//! Real-network analysis: degree trajectories, temporal replay, parameter
//! fitting and model comparison.

mod compare;
mod fit;
mod simplex;
mod temporal;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

pub use compare::{simulate_match, CompareOptions, Comparison, GraphSummary};
pub use fit::{fit_params, model_residual, FitResult, DEGENERATE_A};
pub use simplex::{nelder_mead, SimplexOptions};
pub use temporal::{temporal_replay, Replay, TemporalEdgeList};

/// Piecewise-constant degree of one node over time.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeTrajectory {
    /// `(time, degree)` at each change, starting with the initial state.
    changes: Vec<(f64, u32)>,
    end: f64,
}

impl DegreeTrajectory {
    pub fn starting(time: f64, degree: u32) -> Self {
        Self { changes: alloc::vec![(time, degree)], end: time }
    }

    pub fn current(&self) -> u32 {
        self.changes.last().expect("non-empty").1
    }

    /// Records the degree after an event at `time`; repeated values are
    /// folded into the running interval.
    pub fn observe(&mut self, time: f64, degree: u32) {
        self.end = self.end.max(time);
        let len = self.changes.len();
        let last = self.changes.last_mut().expect("non-empty");
        if last.1 == degree {
            return;
        }
        if last.0 == time && len > 1 {
            self.changes.pop();
            if self.current() == degree {
                return;
            }
        } else if last.0 == time {
            last.1 = degree;
            return;
        }
        self.changes.push((time, degree));
    }

    pub fn close(&mut self, time: f64) {
        self.end = self.end.max(time);
    }

    pub fn changes(&self) -> &[(f64, u32)] {
        &self.changes
    }

    pub fn start(&self) -> f64 {
        self.changes[0].0
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    /// Maximal constant intervals as `(degree, from, to)`.
    pub fn segments(&self) -> impl Iterator<Item = (u32, f64, f64)> + '_ {
        self.changes.iter().enumerate().map(move |(i, &(t, k))| {
            let to = self.changes.get(i + 1).map_or(self.end, |c| c.0);
            (k, t, to)
        })
    }

    pub fn degree_at(&self, time: f64) -> u32 {
        let i = self.changes.partition_point(|c| c.0 <= time);
        self.changes[i.saturating_sub(1)].1
    }
}

/// Mean length of the maximal constant-degree intervals, per degree.
/// Zero-length intervals are ignored.
pub fn residence_times(trajectories: &[DegreeTrajectory]) -> BTreeMap<u32, f64> {
    let mut acc: BTreeMap<u32, (f64, u64)> = BTreeMap::new();
    for traj in trajectories {
        for (k, from, to) in traj.segments() {
            if to > from {
                let e = acc.entry(k).or_insert((0.0, 0));
                e.0 += to - from;
                e.1 += 1;
            }
        }
    }
    acc.into_iter().map(|(k, (sum, n))| (k, sum / n as f64)).collect()
}

/// Decrease frequency for degrees in `[lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionBin {
    pub index: i32,
    pub lower: f64,
    pub upper: f64,
    /// Mean over the bin's degrees of each degree's decrease fraction.
    pub p_down: f64,
    /// Decreases over all transitions in the bin.
    pub pooled: f64,
    pub transitions: u64,
}

/// Logarithmic bin of degree `k`: `10^(x/10) <= k < 10^((x+1)/10)`.
pub fn log_bin(k: u32) -> i32 {
    let mut x = libm::floor(10.0 * libm::log10(k as f64)) as i32;
    // Guard against rounding at exact powers.
    while libm::pow(10.0, (x + 1) as f64 / 10.0) <= k as f64 {
        x += 1;
    }
    while libm::pow(10.0, x as f64 / 10.0) > k as f64 {
        x -= 1;
    }
    x
}

/// Fraction of transitions out of each degree that decrease, grouped into
/// logarithmic bins. Transitions out of degree 0 are skipped and empty bins
/// are omitted.
pub fn transition_direction(trajectories: &[DegreeTrajectory]) -> Vec<DirectionBin> {
    let mut per_k: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
    for traj in trajectories {
        for w in traj.changes().windows(2) {
            let (from, to) = (w[0].1, w[1].1);
            if from == 0 {
                continue;
            }
            let e = per_k.entry(from).or_insert((0, 0));
            e.0 += u64::from(to < from);
            e.1 += 1;
        }
    }
    let mut bins: BTreeMap<i32, (f64, usize, u64, u64)> = BTreeMap::new();
    for (k, (down, total)) in per_k {
        let e = bins.entry(log_bin(k)).or_insert((0.0, 0, 0, 0));
        e.0 += down as f64 / total as f64;
        e.1 += 1;
        e.2 += down;
        e.3 += total;
    }
    bins.into_iter()
        .map(|(x, (frac_sum, degrees, down, total))| DirectionBin {
            index: x,
            lower: libm::pow(10.0, x as f64 / 10.0),
            upper: libm::pow(10.0, (x + 1) as f64 / 10.0),
            p_down: frac_sum / degrees as f64,
            pooled: down as f64 / total as f64,
            transitions: total,
        })
        .collect()
}
