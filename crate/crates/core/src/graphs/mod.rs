//! Simple graphs, isomorphism, small regular graphs and locally-H structure.

mod canon;
mod enumerate;
mod graph;
mod graph6;
mod local;
mod named;

pub use canon::{canonical_form, canonical_labeling, canonical_labeling_colored, is_isomorphic};
pub use enumerate::enumerate_regular_graphs;
pub use graph::{DistanceGraph, DistanceProfile, Graph, MAX_VERTICES};
pub use graph6::{from_graph6, to_graph6};
pub use local::{extend_locally, extend_locally_with_budget, is_locally, LocalExtension, DEFAULT_LOCAL_BUDGET};
pub use named::{complete_multipartite, hypercube, johnson, named_graph, SUPPORTED_NAMES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("invalid edge ({0}, {1})")]
    BadEdge(usize, usize),
    #[error("adjacency matrix is not that of a simple graph")]
    NotSimple,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("{0}")]
    Precondition(String),
    #[error("search exceeded its budget of {budget} nodes after finding {found} graph(s)")]
    BudgetExceeded { budget: u64, found: usize },
}
