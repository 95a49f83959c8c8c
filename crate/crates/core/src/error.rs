use alloc::string::String;

use crate::graph::NodeId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("node {0} is out of range")]
    NodeOutOfRange(NodeId),

    #[error("node {0} has been removed")]
    RemovedNode(NodeId),

    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(NodeId),

    #[error("edge ({0}, {1}) already exists")]
    DuplicateEdge(NodeId, NodeId),

    #[error("edge ({0}, {1}) does not exist")]
    MissingEdge(NodeId, NodeId),

    #[error("node {0} has no neighbours")]
    Isolated(NodeId),

    #[error("graph has no live nodes")]
    EmptyGraph,

    #[error("largest connected component has {0} node(s); at least 2 are required")]
    ComponentTooSmall(usize),

    #[error("chain is not ergodic: no movement possible out of degree {degree}")]
    NotErgodic { degree: usize },

    #[error("power iteration did not converge after {iterations} iterations (last L1 step {residual:e})")]
    NoConvergence { iterations: u64, residual: f64 },

    #[error("reference distribution has zero mass at degree {degree} where the other has mass")]
    UnboundedDivergence { degree: usize },

    #[error("distribution is degenerate: {0}")]
    DegenerateDistribution(&'static str),

    #[error("temporal events are not sorted by timestamp (event {index})")]
    UnsortedEvents { index: usize },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}
