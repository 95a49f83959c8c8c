//! Mutable undirected simple graph with O(1) membership and uniform
//! neighbour sampling.
//!
//! Each node keeps a dense neighbour vector (for sampling and iteration) and a
//! hash map from neighbour id to its slot in that vector (for membership and
//! swap-remove). Removed nodes are tombstoned: their ids stay valid so time
//! series over an attacked graph remain aligned.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::distribution::{DegreeCounts, DegreeDistribution};
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub type NodeId = u32;

#[derive(Debug, Clone)]
pub struct Graph {
    neighbors: Vec<Vec<NodeId>>,
    slots: Vec<HashMap<NodeId, u32>>,
    alive: Vec<bool>,
    live: usize,
    edges: usize,
    removals: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.alive == other.alive && self.edges == other.edges && self.neighbors == other.neighbors
    }
}

impl Graph {
    /// Graph with `n` live nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            neighbors: vec![Vec::new(); n],
            slots: vec![HashMap::new(); n],
            alive: vec![true; n],
            live: n,
            edges: 0,
            removals: 0,
        }
    }

    /// Builds a graph from an edge iterator, rejecting self-loops and
    /// duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Uniform random simple graph with exactly `m` edges (G(n, m)).
    pub fn gnm_random(n: usize, m: usize, rng: &mut RngStream) -> Result<Self> {
        let capacity = n.saturating_mul(n.saturating_sub(1)) / 2;
        if m > capacity {
            return Err(Error::param("m", alloc::format!("{m} edges exceed the simple-graph capacity {capacity} of {n} nodes")));
        }
        let mut g = Self::empty(n);
        if m <= capacity / 2 {
            while g.edges < m {
                let u = rng.below(n) as NodeId;
                let v = rng.below(n) as NodeId;
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        } else {
            // Dense case: draw the complement instead.
            let mut excluded = Self::empty(n);
            while excluded.edges < capacity - m {
                let u = rng.below(n) as NodeId;
                let v = rng.below(n) as NodeId;
                if u != v && !excluded.has_edge(u, v) {
                    excluded.add_edge(u, v)?;
                }
            }
            for u in 0..n as NodeId {
                for v in u + 1..n as NodeId {
                    if !excluded.has_edge(u, v) {
                        g.add_edge(u, v)?;
                    }
                }
            }
        }
        Ok(g)
    }

    /// Total number of node ids, including removed ones.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.alive.len()
    }

    #[inline]
    pub fn live_count(&self) -> usize {
        self.live
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    /// Edges deleted over the graph's lifetime.
    pub fn edge_removals(&self) -> u64 {
        self.removals
    }

    pub fn is_alive(&self, v: NodeId) -> bool {
        self.alive.get(v as usize).copied().unwrap_or(false)
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive.iter().enumerate().filter(|(_, a)| **a).map(|(v, _)| v as NodeId)
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors[v as usize].len()
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v as usize]
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.slots[a as usize].contains_key(&b)
    }

    /// Every edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| (u as NodeId) < v).map(move |&v| (u as NodeId, v)))
    }

    fn check_live(&self, v: NodeId) -> Result<()> {
        if v as usize >= self.alive.len() {
            Err(Error::NodeOutOfRange(v))
        } else if !self.alive[v as usize] {
            Err(Error::RemovedNode(v))
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.push_half(u, v);
        self.push_half(v, u);
        self.edges += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v || !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        self.pop_half(u, v);
        self.pop_half(v, u);
        self.edges -= 1;
        self.removals += 1;
        Ok(())
    }

    fn push_half(&mut self, u: NodeId, v: NodeId) {
        let list = &mut self.neighbors[u as usize];
        self.slots[u as usize].insert(v, list.len() as u32);
        list.push(v);
    }

    fn pop_half(&mut self, u: NodeId, v: NodeId) {
        let slot = self.slots[u as usize].remove(&v).expect("half-edge present") as usize;
        let list = &mut self.neighbors[u as usize];
        list.swap_remove(slot);
        if let Some(&moved) = list.get(slot) {
            self.slots[u as usize].insert(moved, slot as u32);
        }
    }

    /// Uniformly chosen neighbour of `v`.
    pub fn random_neighbor(&self, v: NodeId, rng: &mut RngStream) -> Result<NodeId> {
        self.check_live(v)?;
        let ns = &self.neighbors[v as usize];
        if ns.is_empty() {
            return Err(Error::Isolated(v));
        }
        Ok(ns[rng.below(ns.len())])
    }

    /// Tombstones `v` and deletes its incident edges. Returns its former
    /// neighbours.
    pub fn remove_node(&mut self, v: NodeId) -> Result<Vec<NodeId>> {
        self.check_live(v)?;
        let former = core::mem::take(&mut self.neighbors[v as usize]);
        self.slots[v as usize].clear();
        for &u in &former {
            self.pop_half(u, v);
        }
        self.edges -= former.len();
        self.removals += former.len() as u64;
        self.alive[v as usize] = false;
        self.live -= 1;
        Ok(former)
    }

    /// Degree counts over live nodes, indexed `0..node_count`.
    pub fn degree_counts(&self) -> DegreeCounts {
        let mut counts = DegreeCounts::zeros(self.node_count().max(1));
        for v in self.live_nodes() {
            counts.add(self.degree(v), 1);
        }
        counts
    }

    /// Normalised degree histogram over live nodes.
    pub fn degree_histogram(&self) -> Result<DegreeDistribution> {
        if self.live == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(DegreeDistribution::from_counts(&self.degree_counts()).expect("non-empty counts"))
    }

    /// Checks symmetry, loop-freeness and the handshake identity. Used by
    /// tests and debug assertions.
    pub fn check_invariants(&self) -> bool {
        let mut degree_sum = 0;
        for (u, ns) in self.neighbors.iter().enumerate() {
            let u = u as NodeId;
            if ns.len() != self.slots[u as usize].len() {
                return false;
            }
            if !self.alive[u as usize] && !ns.is_empty() {
                return false;
            }
            for (i, &v) in ns.iter().enumerate() {
                if v == u || self.slots[u as usize].get(&v) != Some(&(i as u32)) {
                    return false;
                }
                if !self.slots[v as usize].contains_key(&u) {
                    return false;
                }
            }
            degree_sum += ns.len();
        }
        degree_sum == 2 * self.edges && self.alive.iter().filter(|a| **a).count() == self.live
    }
}
