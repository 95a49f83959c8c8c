use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, NodeId};

/// Exact unweighted shortest-path betweenness (Brandes accumulation).
///
/// Unnormalised, with each unordered pair counted once: the middle node of a
/// 3-path scores 1. Removed nodes score 0.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<NodeId> = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);

    for s in g.live_nodes() {
        order.clear();
        for v in 0..n {
            sigma[v] = 0.0;
            dist[v] = -1;
            delta[v] = 0.0;
        }
        sigma[s as usize] = 1.0;
        dist[s as usize] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let dv = dist[v as usize];
            for &w in g.neighbors(v) {
                let wi = w as usize;
                if dist[wi] < 0 {
                    dist[wi] = dv + 1;
                    queue.push_back(w);
                }
                if dist[wi] == dv + 1 {
                    sigma[wi] += sigma[v as usize];
                }
            }
        }
        // Predecessors are the neighbours one level closer to the source.
        for &w in order.iter().rev() {
            let wi = w as usize;
            let coeff = (1.0 + delta[wi]) / sigma[wi];
            for &v in g.neighbors(w) {
                let vi = v as usize;
                if dist[vi] == dist[wi] - 1 {
                    delta[vi] += sigma[vi] * coeff;
                }
            }
            if w != s {
                score[wi] += delta[wi];
            }
        }
    }
    score.iter_mut().for_each(|x| *x /= 2.0);
    score
}
