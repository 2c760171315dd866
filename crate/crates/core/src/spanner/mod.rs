//! The spanner constructions on top of the MWSPD.
//!
//! The pipeline shared by all three algorithms: filter the WSPD down to the
//! pairs that still matter for a k-partite graph (the MWSPD), classify
//! split-tree nodes into c-nodes / multichromatic nodes with their
//! representatives, assign each c-node its closest anchored pair `cl(S_u)`,
//! then emit edges family by family. The three entry points differ only in
//! which WSPD variant they consume and how far up each c-node chain the
//! shortcut edges reach.

mod build;
mod classify;
mod graph;
mod params;

pub use build::{
    build_spanner_alg1, build_spanner_alg2, build_spanner_alg3, build_spanner_detailed,
    SpannerBuild,
};
pub use classify::{
    classify_nodes, compute_cl, compute_mwspd, node_colors, ClosestPairAssignment, ColorStatus,
    NodeClassification,
};
pub use graph::{EdgeData, EdgeFamily, SpannerGraph};
pub use params::{derive_params, Algorithm, SpannerParams};
