use fsnet_core::metrics::{avg_shortest_path, betweenness, components, core_numbers, lcc_fraction, partition_modularity};
use fsnet_core::{Graph, RngStream};

mod support;

use support::{adjacency, check_small_graph, distances, random_small, TOL};

#[test]
fn metrics_match_brute_force_on_small_graphs() {
    let mut rng = RngStream::new(2024);
    for trial in 0..500 {
        check_small_graph(&random_small(&mut rng), trial);
    }
}

#[test]
fn path_length_and_components_match_floyd_warshall() {
    let mut rng = RngStream::new(77);
    for _ in 0..300 {
        let g = random_small(&mut rng);
        let d = distances(&g);
        let comps = components(&g);
        let covered: usize = comps.iter().map(Vec::len).sum();
        assert_eq!(covered, g.live_count());
        let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
        if g.live_count() > 0 {
            assert!((lcc_fraction(&g) - largest as f64 / g.live_count() as f64).abs() < TOL);
        }
        let lcc = comps.iter().max_by_key(|c| c.len()).cloned().unwrap_or_default();
        match avg_shortest_path(&g) {
            Ok(l) => {
                let mut sum = 0.0;
                for &u in &lcc {
                    for &v in &lcc {
                        sum += d[u as usize][v as usize] as f64;
                    }
                }
                let s = lcc.len() as f64;
                assert!((l - sum / (s * (s - 1.0))).abs() < TOL);
            }
            Err(_) => assert!(lcc.len() < 2),
        }
    }
}

#[test]
fn core_numbers_invariant_under_relabelling() {
    let mut rng = RngStream::new(9);
    for _ in 0..50 {
        let g = Graph::gnm_random(60, 150, &mut rng).unwrap();
        let mut perm: Vec<u32> = (0..60).collect();
        rng.shuffle(&mut perm);
        let h = Graph::from_edges(60, g.edges().map(|(u, v)| (perm[u as usize], perm[v as usize]))).unwrap();
        let (cg, ch) = (core_numbers(&g), core_numbers(&h));
        for v in 0..60 {
            assert_eq!(cg[v], ch[perm[v] as usize]);
        }
        let (bg, bh) = (betweenness(&g), betweenness(&h));
        for v in 0..60 {
            assert!((bg[v] - bh[perm[v] as usize]).abs() < 1e-8);
        }
    }
}

#[test]
fn modularity_matches_direct_sum() {
    let mut rng = RngStream::new(31);
    for _ in 0..200 {
        let g = random_small(&mut rng);
        if g.edge_count() == 0 {
            continue;
        }
        let n = g.node_count();
        let labels: Vec<u32> = (0..n).map(|_| rng.below(3) as u32).collect();
        let a = adjacency(&g);
        let m = g.edge_count() as f64;
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if labels[i] == labels[j] && g.is_alive(i as u32) && g.is_alive(j as u32) {
                    let aij = if a[i][j] { 1.0 } else { 0.0 };
                    q += aij - (g.degree(i as u32) * g.degree(j as u32)) as f64 / (2.0 * m);
                }
            }
        }
        q /= 2.0 * m;
        assert!((partition_modularity(&g, &labels) - q).abs() < 1e-9);
    }
}
