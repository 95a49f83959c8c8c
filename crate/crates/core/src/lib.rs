//! Fixed-size dynamic networks whose node degrees follow state-dependent
//! random walks.
//!
//! Every node carries a degree-dependent instability: in discrete time it
//! leaves its current degree with probability `((k + c) / n)^a` per sweep, in
//! continuous time it fires at Poisson rate `((k + c) / n)^a`. A move is a
//! fair ±1 step. Increases and severed neighbours wait in a FIFO
//! [`MatchQueue`] until a compatible partner shows up, which decouples each
//! node's walk from the handshake constraint. The stationary degree law is the
//! power form `π_k ∝ ((c + 1) / (k + c))^a`.
//!
//! The crate is `no_std` (with `alloc`): no IO, no threads, no global state.
//! The `fsnet` crate layers file formats, batch execution and the CLI on top.

#![no_std]

extern crate alloc;

pub mod attack;
pub mod distribution;
pub mod dynamics;
pub mod empirical;
mod error;
pub mod graph;
pub mod metrics;
pub mod params;
pub mod queue;
pub mod rng;
pub mod theory;

pub use attack::{execute_attack, recovery_run, AttackPlan, AttackStrategy, RecoveryPoint, RecoveryTrace};
pub use distribution::{DegreeCounts, DegreeDistribution};
pub use dynamics::{
    ClockRefresh, ContinuousModel, DiscreteModel, EventAction, EventRecord, EventSchedule, Evolution,
    EvolutionState, QueuedDraws, RunSeries, Sampling,
};
pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use metrics::MetricsRecord;
pub use params::{Mode, ModelParams};
pub use queue::MatchQueue;
pub use rng::RngStream;
