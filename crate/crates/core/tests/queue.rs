use fsnet_core::{Graph, MatchQueue};
use proptest::prelude::*;

mod support;

use support::run_sequence;

#[test]
fn ten_thousand_sequences_match_literal_scan() {
    for seed in 0..10_000 {
        run_sequence(seed);
    }
}

#[test]
fn earlier_entry_wins() {
    // u (first) and w (second) are both compatible with arrival x.
    let mut g = Graph::from_edges(3, [(0, 1)]).unwrap();
    let mut q = MatchQueue::new(3);
    q.enqueue(0);
    q.enqueue(1);
    assert!(q.match_pass(&mut g).is_empty());
    q.enqueue(2);
    assert_eq!(q.match_pass(&mut g), [(0, 2)]);
    assert_eq!(q.entries(), [1]);
}

#[test]
fn earliest_partner_is_chosen() {
    let mut g = Graph::empty(4);
    let mut q = MatchQueue::new(4);
    for v in [3, 1, 2] {
        q.enqueue(v);
    }
    assert_eq!(q.match_pass(&mut g), [(3, 1)]);
    assert_eq!(q.entries(), [2]);
}

#[test]
fn restart_after_match() {
    // [a, b, c, d] with a~b: a-c forms, then b-d.
    let mut g = Graph::from_edges(4, [(0, 1)]).unwrap();
    let mut q = MatchQueue::new(4);
    for v in 0..4 {
        q.enqueue(v);
    }
    assert_eq!(q.match_pass(&mut g), [(0, 2), (1, 3)]);
    assert!(q.is_empty());
}

#[test]
fn notified_removal_reopens_old_pair() {
    let mut g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let mut q = MatchQueue::new(3);
    q.enqueue(0);
    q.enqueue(1);
    assert!(q.match_pass(&mut g).is_empty());
    g.remove_edge(0, 1).unwrap();
    q.edge_removed(0, 1);
    assert_eq!(q.match_pass(&mut g), [(0, 1)]);
}

#[test]
fn silent_removal_still_detected() {
    let mut g = Graph::from_edges(3, [(0, 1)]).unwrap();
    let mut q = MatchQueue::new(3);
    q.enqueue(0);
    q.enqueue(1);
    assert!(q.match_pass(&mut g).is_empty());
    g.remove_edge(0, 1).unwrap();
    assert_eq!(q.match_pass(&mut g), [(0, 1)]);
}

proptest! {
    #[test]
    fn conservation(n in 2usize..12, seq in proptest::collection::vec(0u32..12, 0..40)) {
        let mut g = Graph::empty(n);
        let mut q = MatchQueue::new(n);
        let mut pushed = 0;
        for v in seq.into_iter().filter(|&v| (v as usize) < n) {
            q.enqueue(v);
            pushed += 1;
        }
        let before = g.edge_count();
        let formed = q.match_pass(&mut g);
        prop_assert_eq!(pushed, q.stranded_count() + 2 * formed.len());
        prop_assert_eq!(g.edge_count(), before + formed.len());
        prop_assert!(g.check_invariants());
        prop_assert!(formed.iter().all(|&(u, w)| u != w));
    }
}
