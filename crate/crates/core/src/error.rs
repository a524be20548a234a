use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("duplicate message position: channel {channel}, seq {seq}")]
    DuplicatePosition { channel: String, seq: u64 },

    #[error("duplicate message id {0}")]
    DuplicateMessage(String),

    #[error("unknown message id {0}")]
    UnknownMessage(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("self-loop on vertex {0}")]
    SelfLoop(String),

    #[error("edge weight must be positive and finite, got {0}")]
    InvalidWeight(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{measure} is not defined for {variant}")]
    UnsupportedVariant { measure: String, variant: String },

    #[error("{measure} did not converge within {iterations} iterations")]
    NonConvergence { measure: String, iterations: usize },

    #[error("graph has {vertices} vertices, above the clique enumeration bound {bound}")]
    TooLarge { vertices: usize, bound: usize },

    #[error("partition covers {partition} vertices but the graph has {graph}")]
    PartitionMismatch { partition: usize, graph: usize },

    #[error("dataset: {0}")]
    Dataset(String),

    #[error("generator config: {0}")]
    Config(String),

    #[error("featurization failed for {} message(s); first: {}: {}", .0.len(), .0[0].0, .0[0].1)]
    Featurize(Vec<(String, Box<Error>)>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
