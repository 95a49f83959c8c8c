use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::HashSet;

use super::DegreeTrajectory;
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Time-stamped edge additions, sorted by time, self-loops removed.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalEdgeList {
    events: Vec<(NodeId, NodeId, f64)>,
    node_count: usize,
    dropped_loops: usize,
}

impl TemporalEdgeList {
    /// Validates order and drops self-loops. `node_count` defaults to one past
    /// the largest id.
    pub fn new(events: Vec<(NodeId, NodeId, f64)>, node_count: Option<usize>) -> Result<Self> {
        for (i, w) in events.windows(2).enumerate() {
            if !(w[0].2 <= w[1].2) {
                return Err(Error::UnsortedEvents { index: i + 1 });
            }
        }
        if let Some(i) = events.iter().position(|e| !e.2.is_finite()) {
            return Err(Error::UnsortedEvents { index: i });
        }
        let max_id = events.iter().map(|e| e.0.max(e.1) as usize + 1).max().unwrap_or(0);
        let node_count = node_count.unwrap_or(max_id);
        if node_count < max_id {
            return Err(Error::NodeOutOfRange((max_id - 1) as NodeId));
        }
        let before = events.len();
        let events: Vec<_> = events.into_iter().filter(|e| e.0 != e.1).collect();
        Ok(Self { dropped_loops: before - events.len(), events, node_count })
    }

    pub fn events(&self) -> &[(NodeId, NodeId, f64)] {
        &self.events
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn dropped_loops(&self) -> usize {
        self.dropped_loops
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Outcome of [`temporal_replay`].
#[derive(Debug, Clone, PartialEq)]
pub struct Replay {
    pub trajectories: Vec<DegreeTrajectory>,
    /// Additions that created an edge.
    pub accepted: usize,
    /// Additions of an already active edge.
    pub ignored: usize,
    /// Expiries processed; equals `accepted` once the replay drains.
    pub removed: usize,
    pub start: f64,
    pub end: f64,
}

/// Replays additions with a fixed edge lifetime. Each accepted edge expires
/// `lifetime` after it was added; at equal times expiries come first. The
/// replay runs until the last edge has expired.
pub fn temporal_replay(list: &TemporalEdgeList, lifetime: f64) -> Result<Replay> {
    if !(lifetime > 0.0) || !lifetime.is_finite() {
        return Err(Error::param("lifetime", alloc::format!("must be positive and finite, got {lifetime}")));
    }
    let start = list.events.first().map_or(0.0, |e| e.2);
    let mut trajectories: Vec<DegreeTrajectory> =
        (0..list.node_count).map(|_| DegreeTrajectory::starting(start, 0)).collect();
    let mut degree = alloc::vec![0u32; list.node_count];
    let mut active: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut expiry: VecDeque<(f64, NodeId, NodeId)> = VecDeque::new();
    let (mut accepted, mut ignored, mut removed) = (0, 0, 0);
    let mut end = start;

    let mut expire = |until: f64,
                      expiry: &mut VecDeque<(f64, NodeId, NodeId)>,
                      active: &mut HashSet<(NodeId, NodeId)>,
                      degree: &mut [u32],
                      trajectories: &mut [DegreeTrajectory],
                      end: &mut f64| {
        while let Some(&(t, u, v)) = expiry.front() {
            if t > until {
                break;
            }
            expiry.pop_front();
            active.remove(&(u, v));
            for x in [u, v] {
                degree[x as usize] -= 1;
                trajectories[x as usize].observe(t, degree[x as usize]);
            }
            removed += 1;
            *end = t;
        }
    };

    for &(a, b, t) in &list.events {
        expire(t, &mut expiry, &mut active, &mut degree, &mut trajectories, &mut end);
        let key = (a.min(b), a.max(b));
        if !active.insert(key) {
            ignored += 1;
            continue;
        }
        accepted += 1;
        expiry.push_back((t + lifetime, key.0, key.1));
        for x in [a, b] {
            degree[x as usize] += 1;
            trajectories[x as usize].observe(t, degree[x as usize]);
        }
        end = end.max(t);
    }
    expire(f64::INFINITY, &mut expiry, &mut active, &mut degree, &mut trajectories, &mut end);
    for traj in &mut trajectories {
        traj.close(end);
    }
    Ok(Replay { trajectories, accepted, ignored, removed, start, end })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsorted_rejected() {
        let err = TemporalEdgeList::new(alloc::vec![(0, 1, 2.0), (1, 2, 1.0)], None).unwrap_err();
        assert_eq!(err, Error::UnsortedEvents { index: 1 });
    }

    #[test]
    fn loops_dropped() {
        let l = TemporalEdgeList::new(alloc::vec![(0, 0, 1.0), (0, 1, 2.0)], None).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.dropped_loops(), 1);
        assert_eq!(l.node_count(), 2);
    }

    #[test]
    fn single_event_window() {
        let l = TemporalEdgeList::new(alloc::vec![(0, 1, 5.0)], None).unwrap();
        let r = temporal_replay(&l, 3.0).unwrap();
        for traj in &r.trajectories {
            assert_eq!(traj.degree_at(5.0), 1);
            assert_eq!(traj.degree_at(7.9), 1);
            assert_eq!(traj.degree_at(8.0), 0);
        }
        assert_eq!((r.accepted, r.ignored, r.removed), (1, 0, 1));
        assert_eq!((r.start, r.end), (5.0, 8.0));
    }

    #[test]
    fn duplicate_active_edge_ignored() {
        let l = TemporalEdgeList::new(alloc::vec![(0, 1, 0.0), (1, 0, 1.0), (0, 1, 10.0)], None).unwrap();
        let r = temporal_replay(&l, 5.0).unwrap();
        assert_eq!((r.accepted, r.ignored, r.removed), (2, 1, 2));
        assert_eq!(r.trajectories[0].degree_at(2.0), 1);
        assert_eq!(r.trajectories[0].degree_at(6.0), 0);
        assert_eq!(r.trajectories[0].degree_at(12.0), 1);
    }

    #[test]
    fn expiry_precedes_addition_at_equal_time() {
        let l = TemporalEdgeList::new(alloc::vec![(0, 1, 0.0), (0, 1, 5.0)], None).unwrap();
        let r = temporal_replay(&l, 5.0).unwrap();
        assert_eq!((r.accepted, r.ignored), (2, 0));
        assert_eq!(r.trajectories[0].degree_at(5.0), 1);
    }
}
