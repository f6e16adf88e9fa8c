//! Locally twisted cube topologies, construction of the maximal family of
//! edge-disjoint spanning trees, structural verification, and broadcast
//! latency simulation.

#![forbid(unsafe_code)]

pub mod ceist;
pub mod error;
pub mod export;
pub mod simulate;
pub mod topology;
pub mod verify;

pub use ceist::{base_case, construct, even_step, odd_step, translate_tree, CeistSet, SpanningTree, SplicePath};
pub use error::{Error, Result};
pub use export::{CeistFile, TopologyFile};
pub use simulate::{compute_latency, pair_count, round_robin_assign, tree_diameter, BroadcastConfig, LatencyReport};
pub use topology::{
    build_ltq_direct, build_ltq_recursive, dimension_neighbor, edge_count, edge_parity,
    is_adjacent, lemma1_holds, subcube_of, vertex_count, Edge, EdgeParity, LtqTopology, Subcube,
    Vertex,
};
pub use verify::{
    is_spanning_tree, leftover_edges, max_tree_bound, pairwise_disjoint, verify,
    VerificationReport,
};
