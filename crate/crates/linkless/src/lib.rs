//! Exact minor-containment toolkit for small graphs.
//!
//! Decides intrinsic linkedness of graphs on up to 13 vertices via the
//! Robertson–Seymour–Thomas characterization (Petersen-family forbidden
//! minors), decides planarity via Kuratowski minors, and applies
//! complement-pair arguments: for every graph on 13 vertices, the graph or
//! its complement is intrinsically linked, and this crate checks such
//! verdicts with replayable branch-set certificates.

pub mod codec;
pub mod minor;
pub mod petersen;
pub mod graph;
pub mod iso;
pub mod linked;

pub use graph::{Edge, Graph, GraphError, SrgParams};
