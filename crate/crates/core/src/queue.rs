//! FIFO matching queue of pending half-edge demands.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::ops::Bound::{Excluded, Unbounded};

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchQueue {
    /// Waiting nodes in arrival order, with their arrival numbers.
    entries: Vec<NodeId>,
    seqs: Vec<u64>,
    next_seq: u64,
    /// Arrival numbers of each node's entries, oldest first.
    arrivals: Vec<VecDeque<u64>>,
    /// Distinct waiting nodes keyed by their oldest arrival.
    heads: BTreeMap<u64, NodeId>,
    /// Heads keyed below this are pairwise incompatible.
    bound: u64,
    /// Graph edge removals accounted for by `bound`.
    stamp: u64,
}

impl MatchQueue {
    pub fn new(node_count: usize) -> Self {
        let mut arrivals = Vec::new();
        arrivals.resize_with(node_count, VecDeque::new);
        Self { arrivals, ..Self::default() }
    }

    /// Appends a demand for `v`. Duplicates are allowed.
    pub fn enqueue(&mut self, v: NodeId) {
        if v as usize >= self.arrivals.len() {
            self.arrivals.resize_with(v as usize + 1, VecDeque::new);
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.entries.push(v);
        self.seqs.push(seq);
        let own = &mut self.arrivals[v as usize];
        if own.is_empty() {
            self.heads.insert(seq, v);
        }
        own.push_back(seq);
    }

    /// Tells the queue that edge `(u, w)` was just deleted, so the next pass
    /// only rescans what that deletion can affect. Without this call the next
    /// pass rescans everything.
    pub fn edge_removed(&mut self, u: NodeId, w: NodeId) {
        self.stamp += 1;
        if let (Some(a), Some(b)) = (self.head_of(u), self.head_of(w)) {
            if a.max(b) < self.bound {
                self.bound = a.min(b);
            }
        }
    }

    fn head_of(&self, v: NodeId) -> Option<u64> {
        self.arrivals.get(v as usize).and_then(|a| a.front().copied())
    }

    pub fn entries(&self) -> &[NodeId] {
        &self.entries
    }

    pub fn pending(&self, v: NodeId) -> u32 {
        self.arrivals.get(v as usize).map_or(0, |a| a.len() as u32)
    }

    /// Number of entries currently waiting.
    pub fn stranded_count(&self) -> usize {
        self.entries.len()
    }

    /// Number of distinct nodes currently waiting.
    pub fn stranded_nodes(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Connects compatible pairs in FIFO priority and returns the new edges in
    /// formation order.
    ///
    /// The earliest entry is paired with its earliest compatible successor
    /// (distinct node, not yet adjacent); both leave the queue and the scan
    /// restarts. Entries of removed nodes are dropped first.
    ///
    /// Only each node's oldest entry can ever be chosen: a later duplicate has
    /// the same partners as the oldest one, which comes first. The scan
    /// therefore walks distinct nodes. Nodes ahead of the cursor had no
    /// partner, and a match only removes entries and adds edges, so resuming
    /// at the cursor yields the same pairs as a restart. Nodes left over from
    /// the previous pass only need checking against newer ones.
    pub fn match_pass(&mut self, g: &mut Graph) -> Vec<(NodeId, NodeId)> {
        self.purge_removed(g);
        if g.edge_removals() != self.stamp {
            self.bound = 0;
        }
        let mut formed = Vec::new();
        // Leftover heads: each needs a partner among the newer heads.
        let mut fresh: Vec<(u64, NodeId)> = self.heads.range(self.bound..).map(|(&k, &w)| (k, w)).collect();
        let mut after = None;
        while !fresh.is_empty() {
            let lower = after.map_or(Unbounded, Excluded);
            let found = self.heads.range((lower, Excluded(self.bound))).find_map(|(&k, &u)| {
                fresh.iter().find(|&&(_, w)| !g.has_edge(u, w)).map(|&(kw, w)| (k, u, kw, w))
            });
            let Some((key, u, kw, w)) = found else { break };
            g.add_edge(u, w).expect("compatible pair forms a valid edge");
            self.consume(u, key);
            self.consume(w, kw);
            formed.push((u, w));
            after = Some(key);
            fresh = self.heads.range(self.bound..).map(|(&k, &w)| (k, w)).collect();
        }
        let mut cursor = self.heads.range(self.bound..).next().map(|(&k, _)| k);
        while let Some(key) = cursor {
            let u = self.heads[&key];
            let partner =
                self.heads.range((Excluded(key), Unbounded)).find(|(_, &w)| !g.has_edge(u, w)).map(|(&k, &w)| (k, w));
            if let Some((kw, w)) = partner {
                g.add_edge(u, w).expect("compatible pair forms a valid edge");
                self.consume(u, key);
                self.consume(w, kw);
                formed.push((u, w));
            }
            cursor = self.heads.range((Excluded(key), Unbounded)).next().map(|(&k, _)| k);
        }
        self.bound = self.next_seq;
        self.stamp = g.edge_removals();
        formed
    }

    fn consume(&mut self, v: NodeId, seq: u64) {
        let own = &mut self.arrivals[v as usize];
        debug_assert_eq!(own.front(), Some(&seq));
        own.pop_front();
        self.heads.remove(&seq);
        if let Some(&next) = own.front() {
            self.heads.insert(next, v);
        }
        let at = self.seqs.binary_search(&seq).expect("entry present");
        self.seqs.remove(at);
        self.entries.remove(at);
    }

    fn purge_removed(&mut self, g: &Graph) {
        let dead: Vec<NodeId> = self.heads.values().copied().filter(|&v| !g.is_alive(v)).collect();
        if dead.is_empty() {
            return;
        }
        for &v in &dead {
            for seq in self.arrivals[v as usize].drain(..) {
                self.heads.remove(&seq);
            }
        }
        let mut kept = 0;
        for i in 0..self.entries.len() {
            if g.is_alive(self.entries[i]) {
                self.entries[kept] = self.entries[i];
                self.seqs[kept] = self.seqs[i];
                kept += 1;
            }
        }
        self.entries.truncate(kept);
        self.seqs.truncate(kept);
    }

    /// True when no two entries could be connected.
    pub fn is_saturated(&self, g: &Graph) -> bool {
        self.entries.iter().enumerate().all(|(i, &u)| {
            self.entries[i + 1..].iter().all(|&w| u == w || g.has_edge(u, w) || !g.is_alive(u) || !g.is_alive(w))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enqueue_appends() {
        let mut q = MatchQueue::new(6);
        q.enqueue(3);
        assert_eq!(q.entries(), [3]);
        q.enqueue(3);
        assert_eq!(q.entries(), [3, 3]);
        assert_eq!(q.pending(3), 2);

        let mut q = MatchQueue::new(6);
        q.enqueue(1);
        q.enqueue(2);
        q.enqueue(5);
        assert_eq!(q.entries(), [1, 2, 5]);
    }

    #[test]
    fn pair_is_matched() {
        let mut g = Graph::empty(3);
        let mut q = MatchQueue::new(3);
        q.enqueue(0);
        q.enqueue(1);
        assert_eq!(q.match_pass(&mut g), [(0, 1)]);
        assert!(q.is_empty());
        assert_eq!(q.stranded_count(), 0);
    }

    #[test]
    fn same_node_is_stranded() {
        let mut g = Graph::empty(3);
        let mut q = MatchQueue::new(3);
        q.enqueue(0);
        q.enqueue(0);
        assert!(q.match_pass(&mut g).is_empty());
        assert_eq!(q.stranded_count(), 2);
    }

    #[test]
    fn adjacent_head_skips_to_next() {
        // entries [a, b, c] with a~b: a pairs with c, b is left.
        let mut g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let mut q = MatchQueue::new(3);
        for v in [0, 1, 2] {
            q.enqueue(v);
        }
        assert_eq!(q.match_pass(&mut g), [(0, 2)]);
        assert_eq!(q.entries(), [1]);
        assert_eq!(q.stranded_count(), 1);
    }

    #[test]
    fn removed_nodes_are_purged() {
        let mut g = Graph::empty(3);
        let mut q = MatchQueue::new(3);
        q.enqueue(0);
        q.enqueue(1);
        q.enqueue(2);
        g.remove_node(0).unwrap();
        assert_eq!(q.match_pass(&mut g), [(1, 2)]);
        assert!(q.is_empty());
        assert_eq!(q.pending(0), 0);
    }
}
