//! Exchange-graph enumeration: breadth-first search over unlabeled seeds, the
//! X-variable census, exchangeable pairs of A-variables, graph comparison and
//! persistence.

pub mod bfs;
pub mod census;
pub mod graph;
pub mod io;
pub mod patterns;

pub use bfs::{explore_raw, LimitHit, Limits, Pattern, RawGraph};
pub use census::{
    count_xvars, count_xvars_from, exchange_graphs_coincide, exchangeable_pairs, explore_a, explore_dynkin, explore_x,
    unique_exchange, ACoefficients, Coefficients, CoincidenceReport, PairCensus, UniqueExchangeReport, XvarCount,
};
pub use graph::{export_graph, graphs_isomorphic, ExchangeGraph, Exported, GraphNode, GraphStats};
pub use io::{graph_from_json, graph_to_json, load_graph, save_graph, to_dot, GRAPH_VERSION};
pub use patterns::{AWalk, Export, ExportField, JointSeed, JointWalk, XWalk};

use crate::seedcore::SeedError;

#[derive(Debug, thiserror::Error)]
pub enum ExploreError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("search stopped by the {hit:?} limit with {} nodes found", partial.nodes.len())]
    Limit { hit: LimitHit, partial: Box<ExchangeGraph> },
    #[error("operation needs a complete graph")]
    PartialGraph,
    #[error("two distinct nodes share the canonical key {0}")]
    KeyCollision(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("corrupt graph file: {0}")]
    Corrupt(String),
    #[error("graph file version {found} is not supported (expected {expected})")]
    Version { found: u64, expected: u64 },
}
