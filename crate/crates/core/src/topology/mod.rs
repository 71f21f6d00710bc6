//! Network graphs, driven sets, reachability, incidence factors and
//! auxiliary digraphs.
//!
//! Vertex ids are 0-based in the Rust API and 1-based in every file format
//! and report ([`VertexSet`] handles the conversion).

mod aux;
mod graph;
mod incidence;
mod reach;

pub use aux::{all_cycles_input_reachable, aux_digraph, AuxDigraph, CycleCheck, Pattern};
pub use graph::{DrivenSet, Edge, EdgeKind, NetworkGraph, VertexSet};
pub use incidence::{
    incidence_matrices, IncidenceRealization, KColumnRule, OrientationPolicy, OrientedEdge,
};
pub use reach::{
    input_reachable_set, is_globally_input_reachable, spanning_forest, unreachable_set,
    ForestOutcome, SpanningForest,
};
