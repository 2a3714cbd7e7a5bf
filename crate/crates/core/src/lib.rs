//! Exact counting of constrained forests and connected subgraphs of small
//! labelled graphs, with canonical-labelling indices that identify equivalent
//! counting problems, used to check edge-negative-association exhaustively.

pub mod canonical;
pub mod counting;
pub mod error;
pub mod graph;
pub mod instances;
pub mod measures;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet, VertexSet};
