use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Core number of every node by bucket peeling. Removed nodes get 0.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| if g.is_alive(v as u32) { g.degree(v as u32) } else { 0 }).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // Nodes sorted by current degree; `bin[d]` is the first slot of degree d.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0u32; n];
    let mut next = bin.clone();
    for v in 0..n {
        let d = degree[v];
        pos[v] = next[d];
        vert[pos[v]] = v as u32;
        next[d] += 1;
    }

    for i in 0..n {
        let v = vert[i] as usize;
        for &u in g.neighbors(v as u32) {
            let u = u as usize;
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw] as usize;
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// Size of the highest non-empty k-core among live nodes.
pub fn max_k_core(g: &Graph) -> usize {
    let cores = core_numbers(g);
    let Some(kmax) = g.live_nodes().map(|v| cores[v as usize]).max() else {
        return 0;
    };
    g.live_nodes().filter(|&v| cores[v as usize] == kmax).count()
}
