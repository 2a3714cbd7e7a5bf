use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside the supported range 1..=11")]
    VertexCount(usize),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge <{x},{y}> is not a valid edge (need 1 <= x < y <= {n})")]
    InvalidEdge { x: usize, y: usize, n: usize },

    #[error("edge rank {rank} out of range for n = {n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid counting problem: {0}")]
    InvalidProblem(String),

    #[error("enumeration budget exceeded: {free} free edges, limit is {limit}")]
    Budget { free: usize, limit: usize },

    #[error("layer of {0} forests exceeds the memory budget")]
    LayerTooLarge(usize),

    #[error("exact integer overflow")]
    Overflow,

    #[error("edge set does not have its isolated vertices as a terminal suffix")]
    NotMinimal,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("cannot contract loop edge {0}")]
    LoopContraction(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index database: {0}")]
    Database(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
