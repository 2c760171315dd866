//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite coordinate at point {index}")]
    NonFiniteCoordinate { index: usize },

    #[error("points {first} and {second} have identical coordinates")]
    DuplicatePoint { first: usize, second: usize },

    #[error("invalid color {color} at point {index} (colors are 1..=k)")]
    InvalidColor { index: usize, color: u32 },

    #[error("color class {color} is empty (colors must cover 1..=k)")]
    EmptyColorClass { color: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("brute-force cap exceeded: n={n} > cap={cap}; lower n or raise the cap")]
    BruteForceCapExceeded { n: usize, cap: usize },

    #[error("vertex mismatch: graph has {graph_n} vertices, point set has {set_n}")]
    VertexMismatch { graph_n: usize, set_n: usize },

    #[error("edge endpoint {index} out of range (n={n})")]
    EdgeOutOfRange { index: usize, n: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
