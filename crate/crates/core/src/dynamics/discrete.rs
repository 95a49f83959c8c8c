
use super::{Evolution, EvolutionState, QueuedDraws};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::params::ModelParams;
use crate::rng::RngStream;

/// Outcome of one node's draw in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Increase,
    Decrease,
    Stay,
}

/// Branch selection for a node of degree `k` given a uniform draw `r`.
///
/// `r > (1 + S) / 2` raises the degree unless `k` is at the top of the range,
/// `r < (1 - S) / 2` lowers it unless `k ≤ 1`. Equality at a threshold stays.
#[inline]
pub fn decide(r: f64, k: usize, params: &ModelParams) -> Decision {
    let s = params.stay_probability(k);
    if r > (1.0 + s) / 2.0 && k < params.max_degree() {
        Decision::Increase
    } else if r < (1.0 - s) / 2.0 && k > 1 {
        Decision::Decrease
    } else {
        Decision::Stay
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub increases: usize,
    pub decreases: usize,
    pub edges_formed: usize,
}

/// Sweep-by-sweep evolution: every live node draws once per sweep, in id
/// order, then the matching queue is drained once.
#[derive(Debug, Clone)]
pub struct DiscreteModel {
    state: EvolutionState,
    params: ModelParams,
    queued: QueuedDraws,
}

impl DiscreteModel {
    pub fn new(graph: Graph, params: ModelParams, rng: RngStream) -> Result<Self> {
        if graph.node_count() != params.n() {
            return Err(Error::param(
                "n",
                alloc::format!("graph has {} nodes but the model expects {}", graph.node_count(), params.n()),
            ));
        }
        Ok(Self { state: EvolutionState::new(graph, rng), params, queued: QueuedDraws::default() })
    }

    pub fn with_queued_draws(self, queued: QueuedDraws) -> Self {
        Self { queued, ..self }
    }

    pub fn into_state(self) -> EvolutionState {
        self.state
    }

    pub fn sweep(&mut self) -> SweepReport {
        let mut report = SweepReport::default();
        let st = &mut self.state;
        for v in 0..st.graph.node_count() as NodeId {
            if !st.graph.is_alive(v) {
                continue;
            }
            let r = st.rng.uniform();
            let k = st.graph.degree(v);
            match decide(r, k, &self.params) {
                Decision::Increase if self.queued.blocks_increase(st.queue.pending(v)) => {}
                Decision::Increase => {
                    st.queue.enqueue(v);
                    report.increases += 1;
                }
                Decision::Decrease => {
                    let m = st.graph.random_neighbor(v, &mut st.rng).expect("degree > 1");
                    st.graph.remove_edge(v, m).expect("edge to sampled neighbour");
                    st.queue.edge_removed(v, m);
                    st.queue.enqueue(m);
                    report.decreases += 1;
                }
                Decision::Stay => {}
            }
        }
        report.edges_formed = st.queue.match_pass(&mut st.graph).len();
        st.step += 1;
        report
    }
}

impl Evolution for DiscreteModel {
    fn params(&self) -> &ModelParams {
        &self.params
    }

    fn state(&self) -> &EvolutionState {
        &self.state
    }

    fn state_mut(&mut self) -> &mut EvolutionState {
        &mut self.state
    }

    fn advance(&mut self) {
        self.sweep();
    }

    fn clock(&self) -> f64 {
        self.state.step as f64
    }

    fn degrees_changed(&mut self, _nodes: &[NodeId]) {}
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use crate::dynamics::Sampling;

    #[test]
    fn mid_draw_never_moves() {
        // With S ≥ 0.2: 0.5 < (1 + S)/2 and 0.5 > (1 - S)/2.
        let p = ModelParams::discrete(1000, 1.0, 0.1).unwrap();
        for k in 1..=799 {
            assert!(p.stay_probability(k) >= 0.2);
            assert_eq!(decide(0.5, k, &p), Decision::Stay);
        }
    }

    #[test]
    fn boundary_guards() {
        let p = ModelParams::discrete(10, 1.0, 0.1).unwrap();
        assert_eq!(decide(0.0, 1, &p), Decision::Stay);
        assert_eq!(decide(0.999_999, 9, &p), Decision::Stay);
        assert_eq!(decide(0.0, 0, &p), Decision::Stay);
        assert_eq!(decide(0.999_999, 0, &p), Decision::Increase);
        assert_eq!(decide(0.0, 2, &p), Decision::Decrease);
    }

    #[test]
    fn threshold_equality_stays() {
        let p = ModelParams::discrete(4, 1.0, 0.0).unwrap();
        // S(2) = 0.5: thresholds at 0.75 and 0.25.
        assert_eq!(decide(0.75, 2, &p), Decision::Stay);
        assert_eq!(decide(0.25, 2, &p), Decision::Stay);
    }

    #[test]
    fn two_node_fixed_point() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let p = ModelParams::discrete(2, 1.0, 0.1).unwrap();
        let mut model = DiscreteModel::new(g.clone(), p, RngStream::new(3)).unwrap();
        for _ in 0..1000 {
            assert_eq!(model.sweep(), SweepReport::default());
        }
        assert_eq!(model.graph(), &g);
        assert!(model.state().queue.is_empty());
    }

    #[test]
    fn zero_horizon_leaves_state() {
        let g = Graph::gnm_random(50, 100, &mut RngStream::new(1)).unwrap();
        let p = ModelParams::discrete(50, 1.0, 0.1).unwrap();
        let mut model = DiscreteModel::new(g.clone(), p, RngStream::new(2)).unwrap();
        let series = model.run(0, &Sampling::every(1));
        assert!(series.records.is_empty() && series.histograms.is_empty());
        assert_eq!(model.graph(), &g);
        assert_eq!(model.iterations(), 0);
    }

    #[test]
    fn runs_are_deterministic() {
        let build = || {
            let g = Graph::gnm_random(80, 160, &mut RngStream::new(4)).unwrap();
            let p = ModelParams::discrete(80, 1.0, 0.1).unwrap();
            DiscreteModel::new(g, p, RngStream::new(5)).unwrap()
        };
        let (mut a, mut b) = (build(), build());
        let sa = a.run(300, &Sampling::every(50));
        let sb = b.run(300, &Sampling::every(50));
        assert_eq!(sa, sb);
        assert_eq!(sa.records.len(), 6);
        assert_eq!(a.graph(), b.graph());
    }

    #[test]
    fn node_count_must_match() {
        let g = Graph::empty(5);
        let p = ModelParams::discrete(6, 1.0, 0.1).unwrap();
        assert!(DiscreteModel::new(g, p, RngStream::new(0)).is_err());
    }

    #[test]
    fn bounds_and_handshake_hold() {
        let mut g = Graph::gnm_random(60, 120, &mut RngStream::new(8)).unwrap();
        for v in 0..60 {
            if g.degree(v) == 0 {
                g.add_edge(v, (v + 1) % 60).unwrap();
            }
        }
        let p = ModelParams::discrete(60, 1.0, 0.1).unwrap();
        let mut model = DiscreteModel::new(g, p, RngStream::new(9)).unwrap();
        let mut all: Vec<SweepReport> = Vec::new();
        for _ in 0..2000 {
            all.push(model.sweep());
            assert!(model.state().degrees_within_bounds(59));
            assert!(model.graph().check_invariants());
            assert!(model.state().queue.is_saturated(model.graph()));
        }
        assert!(all.iter().any(|r| r.edges_formed > 0));
    }
}
