//! Brute-force oracles shared by the integration tests and the acceptance
//! report.
#![allow(dead_code)]

use fsnet_core::metrics::{betweenness, clustering_coefficient, core_numbers, local_clustering, max_k_core, triangles_per_node};
use fsnet_core::{Graph, MatchQueue, NodeId, RngStream};

pub const TOL: f64 = 1e-9;

pub fn random_small(rng: &mut RngStream) -> Graph {
    let n = 1 + rng.below(8);
    let p = rng.uniform();
    let mut g = Graph::empty(n);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.uniform() < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    if n > 2 && rng.uniform() < 0.2 {
        g.remove_node(rng.below(n) as u32).unwrap();
    }
    g
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u as usize][v as usize] = true;
        a[v as usize][u as usize] = true;
    }
    a
}

/// All-pairs distances by Floyd-Warshall over live nodes.
pub fn distances(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let a = adjacency(g);
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        if g.is_alive(u as u32) {
            d[u][u] = 0;
        }
        for v in 0..n {
            if a[u][v] {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Enumerates every shortest s-t path explicitly and counts interior visits.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let a = adjacency(g);
    let d = distances(g);
    let mut score = vec![0.0; n];
    fn walk(path: &mut Vec<usize>, t: usize, a: &[Vec<bool>], d: &[Vec<u32>], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for w in 0..a.len() {
            if a[u][w] && d[w][t] + 1 == d[u][t] {
                path.push(w);
                walk(path, t, a, d, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        for t in s + 1..n {
            if !g.is_alive(s as u32) || !g.is_alive(t as u32) || d[s][t] >= u32::MAX / 4 {
                continue;
            }
            let mut paths = Vec::new();
            walk(&mut vec![s], t, &a, &d, &mut paths);
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    score[v] += 1.0 / total;
                }
            }
        }
    }
    score
}

/// Core number as the largest minimum degree over all induced subgraphs
/// containing the node.
pub fn brute_cores(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let a = adjacency(g);
    let live: Vec<usize> = (0..n).filter(|&v| g.is_alive(v as u32)).collect();
    let mut best = vec![0; n];
    for mask in 1u32..(1 << live.len()) {
        let members: Vec<usize> = (0..live.len()).filter(|i| mask >> i & 1 == 1).map(|i| live[i]).collect();
        let min_deg = members.iter().map(|&u| members.iter().filter(|&&w| a[u][w]).count()).min().unwrap();
        for &u in &members {
            best[u] = best[u].max(min_deg);
        }
    }
    best
}

/// Betweenness, triangles, clustering and cores of `g` against brute force.
pub fn check_small_graph(g: &Graph, trial: usize) {
    let n = g.node_count();
    let a = adjacency(g);

    let fast = betweenness(g);
    let slow = brute_betweenness(g);
    for v in 0..n {
        assert!((fast[v] - slow[v]).abs() < TOL, "trial {trial} betweenness node {v}: {fast:?} vs {slow:?}");
    }

    let tri = triangles_per_node(g);
    let local = local_clustering(g);
    let mut mean = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&w| a[v][w]).collect();
        let mut closed = 0;
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                closed += usize::from(a[nb[i]][nb[j]]);
            }
        }
        assert_eq!(tri[v] as usize, closed, "trial {trial} triangles node {v}");
        let pairs = nb.len() * nb.len().saturating_sub(1) / 2;
        let expect = if pairs == 0 { 0.0 } else { closed as f64 / pairs as f64 };
        assert!((local[v] - expect).abs() < TOL);
        if g.is_alive(v as u32) {
            mean += expect;
        }
    }
    let mean = if g.live_count() == 0 { 0.0 } else { mean / g.live_count() as f64 };
    assert!((clustering_coefficient(g) - mean).abs() < TOL);

    let cores = core_numbers(g);
    assert_eq!(cores, brute_cores(g), "trial {trial} cores");
    let top = cores.iter().copied().max().unwrap_or(0);
    let size = (0..n).filter(|&v| g.is_alive(v as u32) && cores[v] == top).count();
    assert_eq!(max_k_core(g), size);
}

/// Literal matching procedure: find the earliest entry with any compatible
/// later entry, pair it with the earliest such entry, start over.
pub fn oracle_pass(entries: &mut Vec<NodeId>, g: &mut Graph) -> Vec<(NodeId, NodeId)> {
    entries.retain(|&v| g.is_alive(v));
    let mut formed = Vec::new();
    'restart: loop {
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                let (u, w) = (entries[i], entries[j]);
                if u != w && !g.has_edge(u, w) {
                    g.add_edge(u, w).unwrap();
                    entries.remove(j);
                    entries.remove(i);
                    formed.push((u, w));
                    continue 'restart;
                }
            }
        }
        return formed;
    }
}

pub fn pairwise_incompatible(entries: &[NodeId], g: &Graph) -> bool {
    entries
        .iter()
        .enumerate()
        .all(|(i, &u)| entries[i + 1..].iter().all(|&w| u == w || g.has_edge(u, w)))
}

pub enum Op {
    Enqueue(NodeId),
    RemoveEdge { notify: bool },
    AddEdge(NodeId, NodeId),
    RemoveNode(NodeId),
    Match,
}

pub fn random_op(rng: &mut RngStream, n: usize) -> Op {
    let v = rng.below(n) as NodeId;
    match rng.below(10) {
        0..=4 => Op::Enqueue(v),
        5 => Op::RemoveEdge { notify: rng.below(4) != 0 },
        6 => Op::AddEdge(v, rng.below(n) as NodeId),
        7 if rng.below(8) == 0 => Op::RemoveNode(v),
        _ => Op::Match,
    }
}

pub fn run_sequence(seed: u64) {
    let mut rng = RngStream::new(seed);
    let n = 3 + rng.below(8);
    let m = rng.below(n * (n - 1) / 2 + 1);
    let mut g = Graph::gnm_random(n, m, &mut rng).unwrap();
    let mut og = g.clone();
    let mut q = MatchQueue::new(n);
    let mut oq: Vec<NodeId> = Vec::new();
    for _ in 0..60 {
        match random_op(&mut rng, n) {
            Op::Enqueue(v) => {
                if g.is_alive(v) {
                    q.enqueue(v);
                    oq.push(v);
                }
            }
            Op::RemoveEdge { notify } => {
                let edges: Vec<_> = g.edges().collect();
                if !edges.is_empty() {
                    let (u, w) = edges[rng.below(edges.len())];
                    g.remove_edge(u, w).unwrap();
                    og.remove_edge(u, w).unwrap();
                    if notify {
                        q.edge_removed(u, w);
                    }
                }
            }
            Op::AddEdge(u, w) => {
                if g.add_edge(u, w).is_ok() {
                    og.add_edge(u, w).unwrap();
                }
            }
            Op::RemoveNode(v) => {
                if g.is_alive(v) && g.live_count() > 2 {
                    g.remove_node(v).unwrap();
                    og.remove_node(v).unwrap();
                }
            }
            Op::Match => {
                let formed = q.match_pass(&mut g);
                let expected = oracle_pass(&mut oq, &mut og);
                assert_eq!(formed, expected, "seed {seed}");
                assert_eq!(q.entries(), &oq[..], "seed {seed}");
                assert_eq!(g, og);
                assert!(pairwise_incompatible(q.entries(), &g));
                assert!(q.is_saturated(&g));
                for v in 0..n as NodeId {
                    assert_eq!(q.pending(v) as usize, oq.iter().filter(|&&x| x == v).count());
                }
            }
        }
    }
}


/// Kolmogorov-Smirnov critical value at significance 0.001, large-sample form.
pub fn ks_critical(n: usize) -> f64 {
    1.9495 / (n as f64).sqrt()
}

pub fn ks_exponential(mut xs: Vec<f64>, rate: f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = 1.0 - (-rate * x).exp();
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

pub fn within_3se(hits: u64, draws: u64, p: f64) -> bool {
    let freq = hits as f64 / draws as f64;
    let se = (p * (1.0 - p) / draws as f64).sqrt();
    if se == 0.0 {
        hits as f64 == p * draws as f64
    } else {
        (freq - p).abs() <= 3.0 * se
    }
}


/// Solves `π (P - I) = 0`, `Σ π = 1` by Gaussian elimination with partial
/// pivoting on the transposed system.
pub fn solve_stationary(p: &[Vec<f64>]) -> Vec<f64> {
    let m = p.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for i in 0..m {
        for j in 0..m {
            a[i][j] = p[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..m {
        a[m - 1][j] = 1.0;
    }
    a[m - 1][m] = 1.0;
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, pivot);
        for row in 0..m {
            if row != col {
                let f = a[row][col] / a[col][col];
                if f != 0.0 {
                    for k in col..=m {
                        a[row][k] -= f * a[col][k];
                    }
                }
            }
        }
    }
    (0..m).map(|i| a[i][m] / a[i][i]).collect()
}

