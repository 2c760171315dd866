//! Sparse spanners of complete k-partite geometric graphs.
//!
//! Given `n` points in `R^d` partitioned into `k` color classes, the complete
//! k-partite graph `K` joins exactly the differently-colored point pairs,
//! weighted by Euclidean distance. This crate constructs subgraphs of `K`
//! that approximate all of its shortest paths:
//!
//! * [`spanner::build_spanner_alg1`]: constant stretch, O(n) edges,
//! * [`spanner::build_spanner_alg2`]: (5+eps) stretch, O(n) edges,
//! * [`spanner::build_spanner_alg3`]: (3+eps) stretch, O(n log n) edges,
//!
//! all built on the well-separated pair decomposition of a fair split-tree.
//! [`verify`] provides an exact stretch oracle plus executable checks of the
//! decomposition's guarantees, and [`instances`] generates reproducible test
//! inputs, including the three-disk family on which stretch below `3 - eps`
//! is impossible without quadratically many edges.
//!
//! Everything is generic over the coordinate scalar (`f32` or `f64`); the
//! `*64` aliases below pin `f64`.

// Index loops over parallel per-node arrays read better than enumerate here.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod geometry;
pub mod instances;
pub mod io;
pub mod scalar;
pub mod spanner;
pub mod split_tree;
pub mod verify;
pub mod wspd;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type BoundingBox64 = geometry::BoundingBox<f64>;
pub type PointSet64 = geometry::ColoredPointSet<f64>;
pub type SplitTree64 = split_tree::SplitTree<f64>;
pub type WspdPairList64 = wspd::WspdPairList<f64>;
pub type SpannerGraph64 = spanner::SpannerGraph<f64>;
pub type StretchReport64 = verify::StretchReport<f64>;
