//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Tokenizer or run configuration rejected before any work starts.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A caller-supplied argument is out of range or unparseable.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {}: {source}", path.display())]
    WriteIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{} is not valid UTF-8: undecodable byte at offset {offset}", path.display())]
    InvalidUtf8 { path: PathBuf, offset: usize },

    #[error("occurrence positions must be strictly increasing (saw {prev} followed by {next})")]
    NonIncreasingPositions { prev: u32, next: u32 },

    #[error("series value at position {index} must be a non-negative finite number, got {value}")]
    InvalidSeriesValue { index: usize, value: f64 },

    #[error("series of length {len} exceeds the reference builder cap of {cap}")]
    SeriesTooLong { len: usize, cap: usize },

    #[error("stage-one graph has {graph_nodes} nodes but the document has {doc_tokens} tokens")]
    NodeCountMismatch {
        graph_nodes: usize,
        doc_tokens: usize,
    },

    #[error("graphs were built from different documents")]
    SourceMismatch,

    #[error("expected a {expected} graph, got a {got} graph")]
    WrongGraphKind { expected: String, got: String },

    #[error("unknown word id {0}")]
    UnknownWord(u32),

    #[error("graph is empty: degree distribution is undefined")]
    EmptyGraph,

    #[error("document is empty")]
    EmptyDocument,

    /// Power-law fitting needs enough distinct tail points to be meaningful.
    #[error(
        "insufficient points for power-law fit: {have} distinct values with positive tail \
         probability at k >= {k_min}, need at least {need}"
    )]
    InsufficientFitPoints { have: usize, need: usize, k_min: u64 },
}
