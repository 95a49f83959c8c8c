//! Multi-level greedy modularity optimisation (Louvain style).

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, NodeId};
use crate::rng::RngStream;

const NO_COMMUNITY: u32 = u32::MAX;
const MAX_PASSES: usize = 100;
const MAX_LEVELS: usize = 32;
const GAIN_EPS: f64 = 1e-12;

struct Level {
    adj: Vec<Vec<(u32, f64)>>,
    self_weight: Vec<f64>,
    degree: Vec<f64>,
    total: f64,
}

impl Level {
    fn from_graph(g: &Graph, index: &[u32], count: usize) -> Self {
        let mut adj = vec![Vec::new(); count];
        for v in g.live_nodes() {
            let i = index[v as usize];
            adj[i as usize] = g.neighbors(v).iter().map(|&w| (index[w as usize], 1.0)).collect();
        }
        Self::finish(adj, vec![0.0; count])
    }

    fn finish(adj: Vec<Vec<(u32, f64)>>, self_weight: Vec<f64>) -> Self {
        let degree: Vec<f64> =
            adj.iter().zip(&self_weight).map(|(ns, s)| ns.iter().map(|e| e.1).sum::<f64>() + 2.0 * s).collect();
        let total = degree.iter().sum();
        Self { adj, self_weight, degree, total }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Local moving phase. Returns the community of each level node
    /// (dense ids) and whether anything moved.
    fn local_moves(&self, rng: &mut RngStream) -> (Vec<u32>, bool) {
        let n = self.len();
        let mut comm: Vec<u32> = (0..n as u32).collect();
        let mut tot = self.degree.clone();
        let mut order: Vec<u32> = (0..n as u32).collect();
        rng.shuffle(&mut order);
        let mut weight_to = vec![0.0f64; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut moved_any = false;
        if self.total <= 0.0 {
            return (comm, false);
        }
        for _ in 0..MAX_PASSES {
            let mut moved = false;
            for &i in &order {
                let i = i as usize;
                let own = comm[i];
                let ki = self.degree[i];
                for &(j, w) in &self.adj[i] {
                    let c = comm[j as usize];
                    if weight_to[c as usize] == 0.0 {
                        touched.push(c);
                    }
                    weight_to[c as usize] += w;
                }
                tot[own as usize] -= ki;
                let gain = |c: u32, wt: f64| wt - tot[c as usize] * ki / self.total;
                let mut best = own;
                let mut best_gain = gain(own, weight_to[own as usize]);
                for &c in &touched {
                    let g = gain(c, weight_to[c as usize]);
                    if g > best_gain + GAIN_EPS {
                        best = c;
                        best_gain = g;
                    }
                }
                tot[best as usize] += ki;
                if best != own {
                    comm[i] = best;
                    moved = true;
                    moved_any = true;
                }
                for &c in &touched {
                    weight_to[c as usize] = 0.0;
                }
                touched.clear();
            }
            if !moved {
                break;
            }
        }
        // Relabel densely in order of first appearance.
        let mut relabel = vec![NO_COMMUNITY; n];
        let mut next = 0;
        for c in comm.iter_mut() {
            if relabel[*c as usize] == NO_COMMUNITY {
                relabel[*c as usize] = next;
                next += 1;
            }
            *c = relabel[*c as usize];
        }
        (comm, moved_any)
    }

    fn aggregate(&self, comm: &[u32]) -> Level {
        let count = comm.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut self_weight = vec![0.0; count];
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); count];
        let mut slot = vec![usize::MAX; count];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, &c) in comm.iter().enumerate() {
            members[c as usize].push(i);
            self_weight[c as usize] += self.self_weight[i];
        }
        for c in 0..count {
            let mut row: Vec<(u32, f64)> = Vec::new();
            for &i in &members[c] {
                for &(j, w) in &self.adj[i] {
                    let d = comm[j as usize];
                    if d as usize == c {
                        // Internal edges are seen from both ends.
                        self_weight[c] += w / 2.0;
                    } else if slot[d as usize] == usize::MAX {
                        slot[d as usize] = row.len();
                        row.push((d, w));
                    } else {
                        row[slot[d as usize]].1 += w;
                    }
                }
            }
            for &(d, _) in &row {
                slot[d as usize] = usize::MAX;
            }
            adj[c] = row;
        }
        Level::finish(adj, self_weight)
    }
}

/// Community label per node (`u32::MAX` for removed nodes).
pub fn louvain(g: &Graph, rng: &mut RngStream) -> Vec<u32> {
    let mut index = vec![NO_COMMUNITY; g.node_count()];
    let live: Vec<NodeId> = g.live_nodes().collect();
    for (i, &v) in live.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let mut level = Level::from_graph(g, &index, live.len());
    // membership[i] = community of live node i at the current level.
    let mut membership: Vec<u32> = (0..live.len() as u32).collect();
    for _ in 0..MAX_LEVELS {
        let (comm, moved) = level.local_moves(rng);
        if !moved {
            break;
        }
        for m in membership.iter_mut() {
            *m = comm[*m as usize];
        }
        level = level.aggregate(&comm);
    }
    let mut labels = vec![NO_COMMUNITY; g.node_count()];
    for (i, &v) in live.iter().enumerate() {
        labels[v as usize] = membership[i];
    }
    labels
}

/// Newman modularity of a labelled partition of the live nodes.
pub fn partition_modularity(g: &Graph, labels: &[u32]) -> f64 {
    let m2 = 2.0 * g.edge_count() as f64;
    if m2 == 0.0 {
        return 0.0;
    }
    let count = g.live_nodes().map(|v| labels[v as usize] as usize + 1).max().unwrap_or(0);
    let mut internal = vec![0.0; count];
    let mut tot = vec![0.0; count];
    for v in g.live_nodes() {
        let c = labels[v as usize] as usize;
        tot[c] += g.degree(v) as f64;
        for &w in g.neighbors(v) {
            if labels[w as usize] as usize == c {
                internal[c] += 1.0;
            }
        }
    }
    internal.iter().zip(&tot).map(|(i, t)| i / m2 - (t / m2) * (t / m2)).sum()
}

/// Modularity of the partition found by [`louvain`].
pub fn modularity(g: &Graph, rng: &mut RngStream) -> f64 {
    let labels = louvain(g, rng);
    partition_modularity(g, &labels)
}
