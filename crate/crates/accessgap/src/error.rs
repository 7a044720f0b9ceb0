use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: expected two whitespace-separated non-negative integers, got {text:?}")]
    MalformedEdgeLine { line: usize, text: String },

    #[error("edge list contains no vertices")]
    EmptyGraph,

    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("unknown node label {label:?}")]
    UnknownLabel { label: String },

    #[error("seed set must not be empty")]
    EmptySeeds,

    #[error("invalid cascade config: {reason}")]
    InvalidCascadeConfig { reason: String },

    #[error("exact computation refused: {arcs} arc coins exceed cap of {cap}")]
    ExactCapExceeded { arcs: usize, cap: usize },

    #[error("exact computation refused: {n} nodes exceed the bit-parallel limit of 64")]
    ExactTooManyNodes { n: usize },

    #[error("subset must not be empty")]
    EmptySubset,

    #[error("invalid bipartition: {reason}")]
    InvalidBipartition { reason: String },

    #[error("brute-force search infeasible: {reason}")]
    Infeasible { reason: String },

    #[error("cannot add {k} seeds: only {available} non-seed nodes remain")]
    NotEnoughCandidates { k: usize, available: usize },

    #[error("graph is disconnected; no center exists")]
    Disconnected,

    #[error("invalid fixture parameters: {reason}")]
    InvalidFixtureParams { reason: String },

    #[error("vectors must have equal length >= 2")]
    BadCorrelationInput,

    #[error("correlation undefined: input vector is constant")]
    ConstantInput,

    #[error("invalid experiment config: {reason}")]
    InvalidExperimentConfig { reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// Stable machine-parseable category, used for the CLI error prefix and
    /// exit-code mapping.
    pub fn category(&self) -> &'static str {
        use Error::*;
        match self {
            MalformedEdgeLine { .. } | EmptyGraph | UnknownLabel { .. } | Io { .. }
            | Json { .. } => "input",
            ExactCapExceeded { .. } | ExactTooManyNodes { .. } | Infeasible { .. }
            | NotEnoughCandidates { .. } | Disconnected => "infeasible",
            _ => "usage",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
