//! Topological observables over the live part of a graph.
//!
//! Removed nodes are invisible here: they are neither counted in
//! denominators nor traversed.

mod betweenness;
mod clustering;
mod kcore;
mod louvain;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

pub use betweenness::betweenness;
pub use clustering::{clustering_coefficient, local_clustering, triangles_per_node};
pub use kcore::{core_numbers, max_k_core};
pub use louvain::{louvain, modularity, partition_modularity};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::RngStream;

const UNSEEN: u32 = u32::MAX;

/// Connected components of live nodes, largest first (ties: smallest member
/// id first).
pub fn components(g: &Graph) -> Vec<Vec<NodeId>> {
    let mut label = vec![UNSEEN; g.node_count()];
    let mut comps: Vec<Vec<NodeId>> = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.live_nodes() {
        if label[s as usize] != UNSEEN {
            continue;
        }
        let id = comps.len() as u32;
        let mut members = vec![s];
        label[s as usize] = id;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w as usize] == UNSEEN {
                    label[w as usize] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        comps.push(members);
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()));
    comps
}

pub fn largest_component(g: &Graph) -> Vec<NodeId> {
    components(g).into_iter().next().unwrap_or_default()
}

/// Fraction of live nodes inside the largest connected component.
pub fn lcc_fraction(g: &Graph) -> f64 {
    if g.live_count() == 0 {
        return 0.0;
    }
    largest_component(g).len() as f64 / g.live_count() as f64
}

/// BFS distances from `source`; `u32::MAX` marks unreachable nodes.
pub fn bfs_distances(g: &Graph, source: NodeId) -> Vec<u32> {
    let mut dist = vec![UNSEEN; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize] + 1;
        for &w in g.neighbors(u) {
            if dist[w as usize] == UNSEEN {
                dist[w as usize] = d;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Mean shortest-path length over unordered node pairs of the largest
/// connected component.
pub fn avg_shortest_path(g: &Graph) -> Result<f64> {
    let lcc = largest_component(g);
    let s = lcc.len();
    if s < 2 {
        return Err(Error::ComponentTooSmall(s));
    }
    let mut dist = vec![UNSEEN; g.node_count()];
    let mut queue = VecDeque::with_capacity(s);
    let mut total: u64 = 0;
    for &src in &lcc {
        dist.iter_mut().for_each(|d| *d = UNSEEN);
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize];
            total += d as u64;
            for &w in g.neighbors(u) {
                if dist[w as usize] == UNSEEN {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    // Every unordered pair was counted from both ends.
    Ok(total as f64 / (s as f64 * (s as f64 - 1.0)))
}

/// Current mean path length relative to `baseline`.
pub fn relative_path_length(g: &Graph, baseline: f64) -> Result<f64> {
    if !(baseline > 0.0) {
        return Err(Error::param("baseline", alloc::format!("must be positive, got {baseline}")));
    }
    Ok(avg_shortest_path(g)? / baseline)
}

/// How much to compute per sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricLevel {
    /// Largest-component fraction and stranded count only.
    #[default]
    Basic,
    /// Everything in [`MetricsRecord`].
    Full,
}

/// One snapshot of network observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRecord {
    /// Model clock (sweeps or simulated time).
    pub time: f64,
    /// Iterations performed (sweeps or events).
    pub iteration: u64,
    pub p_lcc: f64,
    pub stranded: usize,
    pub avg_shortest_path: Option<f64>,
    pub relative_l: Option<f64>,
    pub max_k_core: Option<usize>,
    pub modularity: Option<f64>,
    pub clustering: Option<f64>,
}

impl MetricsRecord {
    pub fn observe(
        g: &Graph,
        stranded: usize,
        time: f64,
        iteration: u64,
        baseline: Option<f64>,
        level: MetricLevel,
        rng: &mut RngStream,
    ) -> Self {
        let mut record = Self {
            time,
            iteration,
            p_lcc: lcc_fraction(g),
            stranded,
            avg_shortest_path: None,
            relative_l: None,
            max_k_core: None,
            modularity: None,
            clustering: None,
        };
        if level == MetricLevel::Full {
            record.avg_shortest_path = avg_shortest_path(g).ok();
            record.relative_l = match (record.avg_shortest_path, baseline) {
                (Some(l), Some(b)) if b > 0.0 => Some(l / b),
                _ => None,
            };
            record.max_k_core = Some(max_k_core(g));
            record.modularity = Some(modularity(g, rng));
            record.clustering = Some(clustering_coefficient(g));
        }
        record
    }
}
