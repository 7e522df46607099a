//! Token graphs `F_k(G)` and their edge-connectivity.
//!
//! * [`graph`]: simple undirected graphs, standard families, text formats.
//! * [`connectivity`]: `δ`, `λ`, `κ` and edge-disjoint path systems via max-flow.
//! * [`token`]: k-subsets, colexicographic ranking, materialized token graphs.
//! * [`lemma`]: explicit families of `k(λ(G) - k + 1)` edge-disjoint paths
//!   between adjacent configurations, with certificates.

pub mod connectivity;
pub mod graph;
pub mod lemma;
pub mod token;

pub use connectivity::{
    connectivity_report, edge_connectivity, edge_connectivity_over_edges,
    exhaustive_edge_connectivity, local_edge_connectivity, max_flow_paths, min_degree,
    vertex_connectivity, ConnectivityError, ConnectivityReport,
};
pub use graph::{DirectedPath, Graph, GraphError, PathError, VertexId};
pub use lemma::{
    construct_family, is_admissible, lift_path, DisjointFamilyCertificate, FamilyBuilder,
    LemmaError, LiftedPath, MengerSystem,
};
pub use token::{build_token_graph, TokenConfig, TokenError, TokenGraph};
