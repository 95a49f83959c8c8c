use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, NodeId};

/// Triangles through each node.
///
/// Edges are oriented from lower to higher `(degree, id)` rank, so each
/// triangle is found exactly once from its lowest-ranked corner.
pub fn triangles_per_node(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let rank_lt = |u: NodeId, v: NodeId| (g.degree(u), u) < (g.degree(v), v);
    let forward: Vec<Vec<NodeId>> = (0..n as NodeId)
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| rank_lt(v, w)).collect())
        .collect();
    let mut tri = vec![0u64; n];
    let mut mark = vec![false; n];
    for v in 0..n {
        for &w in &forward[v] {
            mark[w as usize] = true;
        }
        for &u in &forward[v] {
            for &w in &forward[u as usize] {
                if mark[w as usize] {
                    tri[v] += 1;
                    tri[u as usize] += 1;
                    tri[w as usize] += 1;
                }
            }
        }
        for &w in &forward[v] {
            mark[w as usize] = false;
        }
    }
    tri
}

/// Local clustering per node; 0 for degree below 2.
pub fn local_clustering(g: &Graph) -> Vec<f64> {
    triangles_per_node(g)
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            let k = g.degree(v as NodeId) as f64;
            if k < 2.0 {
                0.0
            } else {
                t as f64 / (k * (k - 1.0) / 2.0)
            }
        })
        .collect()
}

/// Mean local clustering over live nodes.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    if g.live_count() == 0 {
        return 0.0;
    }
    let local = local_clustering(g);
    g.live_nodes().map(|v| local[v as usize]).sum::<f64>() / g.live_count() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::test_graphs::*;

    #[test]
    fn triangle_and_star() {
        assert_eq!(clustering_coefficient(&complete(3)), 1.0);
        assert_eq!(clustering_coefficient(&star(6)), 0.0);
    }

    #[test]
    fn triangle_with_pendant() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(triangles_per_node(&g), [1, 1, 1, 0]);
        let c = local_clustering(&g);
        assert!((c[2] - 1.0 / 3.0).abs() < 1e-15);
        assert!((clustering_coefficient(&g) - (1.0 + 1.0 + 1.0 / 3.0) / 4.0).abs() < 1e-15);
    }
}
