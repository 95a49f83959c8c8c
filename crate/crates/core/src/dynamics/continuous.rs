use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Evolution, EvolutionState, QueuedDraws};
use crate::empirical::DegreeTrajectory;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::params::ModelParams;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy)]
struct Slot {
    time: f64,
    node: NodeId,
    version: u32,
}

impl PartialEq for Slot {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Slot {}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slot {
    // Reversed so the max-heap pops the earliest time; ties go to the lower id.
    fn cmp(&self, other: &Self) -> Ordering {
        other.time.total_cmp(&self.time).then_with(|| other.node.cmp(&self.node))
    }
}

/// Absolute next-event time per node, behind a lazily invalidated min-heap.
///
/// Rescheduling a node bumps its version; stale heap slots are skipped on pop
/// and the heap is rebuilt once they dominate.
#[derive(Debug, Clone)]
pub struct EventSchedule {
    heap: BinaryHeap<Slot>,
    times: Vec<f64>,
    versions: Vec<u32>,
    now: f64,
}

impl EventSchedule {
    pub fn new(node_count: usize) -> Self {
        Self {
            heap: BinaryHeap::with_capacity(node_count * 2),
            times: vec![f64::INFINITY; node_count],
            versions: vec![0; node_count],
            now: 0.0,
        }
    }

    pub fn now(&self) -> f64 {
        self.now
    }

    pub fn next_time(&self, v: NodeId) -> f64 {
        self.times[v as usize]
    }

    /// Sets the absolute time of `v`'s next event; `+inf` unschedules it.
    pub fn schedule(&mut self, v: NodeId, time: f64) {
        let i = v as usize;
        self.versions[i] = self.versions[i].wrapping_add(1);
        self.times[i] = time;
        if time.is_finite() {
            self.heap.push(Slot { time, node: v, version: self.versions[i] });
        }
        if self.heap.len() > 3 * self.times.len() + 64 {
            self.rebuild();
        }
    }

    pub fn cancel(&mut self, v: NodeId) {
        self.schedule(v, f64::INFINITY);
    }

    fn rebuild(&mut self) {
        let slots: Vec<Slot> = self
            .times
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_finite())
            .map(|(i, &time)| Slot { time, node: i as NodeId, version: self.versions[i] })
            .collect();
        self.heap = BinaryHeap::from(slots);
    }

    fn is_current(&self, s: &Slot) -> bool {
        self.versions[s.node as usize] == s.version
    }

    /// Node with the smallest scheduled time, without removing it.
    pub fn peek(&mut self) -> Option<(f64, NodeId)> {
        while let Some(top) = self.heap.peek() {
            if self.is_current(top) {
                return Some((top.time, top.node));
            }
            self.heap.pop();
        }
        None
    }

    /// Removes the earliest event and advances the clock to it. The node is
    /// left unscheduled until the caller reschedules it.
    pub fn pop(&mut self) -> Option<(f64, NodeId)> {
        let (time, node) = self.peek()?;
        self.heap.pop();
        self.times[node as usize] = f64::INFINITY;
        self.versions[node as usize] = self.versions[node as usize].wrapping_add(1);
        self.now = time;
        Some((time, node))
    }

    /// Number of nodes holding a finite event time.
    pub fn scheduled_count(&self) -> usize {
        self.times.iter().filter(|t| t.is_finite()).count()
    }
}

/// Which clocks are redrawn after an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClockRefresh {
    /// The firing node plus every node whose degree changed, matched nodes
    /// included.
    #[default]
    Changed,
    /// Only the firing node.
    TriggerOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventAction {
    /// The node joined the matching queue.
    Increase,
    /// The node dropped the edge to `neighbor`, which joined the queue.
    Decrease { neighbor: NodeId },
    /// The coin picked a direction closed by the degree bounds.
    Blocked,
}

impl EventAction {
    pub fn label(&self) -> &'static str {
        match self {
            EventAction::Increase => "increase",
            EventAction::Decrease { .. } => "decrease",
            EventAction::Blocked => "blocked",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventRecord {
    pub time: f64,
    pub node: NodeId,
    pub action: EventAction,
}

/// Event-driven evolution: every node fires after an exponential delay with
/// rate `λ(k)`; the earliest event moves its node by a fair ±1 step.
#[derive(Debug, Clone)]
pub struct ContinuousModel {
    state: EvolutionState,
    schedule: EventSchedule,
    params: ModelParams,
    refresh: ClockRefresh,
    queued: QueuedDraws,
    touched: Vec<NodeId>,
    recorder: Option<Vec<DegreeTrajectory>>,
}

impl ContinuousModel {
    pub fn new(graph: Graph, params: ModelParams, rng: RngStream) -> Result<Self> {
        Self::with_refresh(graph, params, rng, ClockRefresh::Changed)
    }

    pub fn with_refresh(graph: Graph, params: ModelParams, rng: RngStream, refresh: ClockRefresh) -> Result<Self> {
        if graph.node_count() != params.n() {
            return Err(Error::param(
                "n",
                alloc::format!("graph has {} nodes but the model expects {}", graph.node_count(), params.n()),
            ));
        }
        let mut model = Self {
            schedule: EventSchedule::new(graph.node_count()),
            state: EvolutionState::new(graph, rng),
            params,
            refresh,
            queued: QueuedDraws::default(),
            touched: Vec::new(),
            recorder: None,
        };
        for v in 0..model.state.graph.node_count() as NodeId {
            if model.state.graph.is_alive(v) {
                model.redraw(v);
            }
        }
        Ok(model)
    }

    pub fn with_queued_draws(self, queued: QueuedDraws) -> Self {
        Self { queued, ..self }
    }

    pub fn schedule(&self) -> &EventSchedule {
        &self.schedule
    }

    pub fn time(&self) -> f64 {
        self.schedule.now()
    }

    /// Starts recording per-node degree trajectories from the current state.
    pub fn record_trajectories(&mut self) {
        let now = self.time();
        let g = &self.state.graph;
        self.recorder = Some(
            (0..g.node_count() as NodeId)
                .map(|v| DegreeTrajectory::starting(now, g.degree(v) as u32))
                .collect(),
        );
    }

    /// Recorded trajectories, closed at the current time.
    pub fn take_trajectories(&mut self) -> Option<Vec<DegreeTrajectory>> {
        let now = self.time();
        self.recorder.take().map(|mut ts| {
            ts.iter_mut().for_each(|t| t.close(now));
            ts
        })
    }

    fn redraw(&mut self, v: NodeId) {
        let rate = self.params.rate(self.state.graph.degree(v));
        let t = self.schedule.now() + self.state.rng.exponential(rate);
        self.schedule.schedule(v, t);
    }

    /// Fires the earliest event. `None` when no node can fire.
    pub fn fire_next(&mut self) -> Option<EventRecord> {
        let (time, v) = loop {
            let (time, v) = self.schedule.pop()?;
            if self.state.graph.is_alive(v) {
                break (time, v);
            }
        };
        let st = &mut self.state;
        self.touched.clear();
        let k = st.graph.degree(v);
        let heads = st.rng.uniform() > 0.5;
        let action = if heads {
            if k < self.params.max_degree() && !self.queued.blocks_increase(st.queue.pending(v)) {
                st.queue.enqueue(v);
                EventAction::Increase
            } else {
                EventAction::Blocked
            }
        } else if k > 1 {
            let m = st.graph.random_neighbor(v, &mut st.rng).expect("degree > 1");
            st.graph.remove_edge(v, m).expect("edge to sampled neighbour");
            st.queue.edge_removed(v, m);
            st.queue.enqueue(m);
            self.touched.push(m);
            EventAction::Decrease { neighbor: m }
        } else {
            EventAction::Blocked
        };
        for (a, b) in st.queue.match_pass(&mut st.graph) {
            self.touched.push(a);
            self.touched.push(b);
        }
        st.step += 1;

        self.redraw(v);
        if self.refresh == ClockRefresh::Changed {
            self.touched.sort_unstable();
            self.touched.dedup();
            for i in 0..self.touched.len() {
                let u = self.touched[i];
                if u != v {
                    self.redraw(u);
                }
            }
        }
        if let Some(rec) = self.recorder.as_mut() {
            let g = &self.state.graph;
            rec[v as usize].observe(time, g.degree(v) as u32);
            for &u in &self.touched {
                rec[u as usize].observe(time, g.degree(u) as u32);
            }
        }
        Some(EventRecord { time, node: v, action })
    }

    /// Fires up to `events` events and returns their log.
    pub fn fire_logged(&mut self, events: u64) -> Vec<EventRecord> {
        (0..events).map_while(|_| self.fire_next()).collect()
    }
}

impl Evolution for ContinuousModel {
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
        self.fire_next();
    }

    fn clock(&self) -> f64 {
        self.time()
    }

    fn degrees_changed(&mut self, nodes: &[NodeId]) {
        for &v in nodes {
            if self.state.graph.is_alive(v) {
                self.redraw(v);
                if let Some(rec) = self.recorder.as_mut() {
                    rec[v as usize].observe(self.schedule.now(), self.state.graph.degree(v) as u32);
                }
            } else {
                self.schedule.cancel(v);
            }
        }
    }
}
