use thiserror::Error;

/// Errors produced by graph, measure and mean-set operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertices are not connected: {0} and {1}")]
    Unreachable(String, String),

    #[error("operation requires a finite explicit graph")]
    InfiniteGraph,

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),

    #[error("atom {atom} is unreachable from vertex {from}")]
    UnreachableAtom { atom: String, from: String },

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(String),

    #[error("direct descent exceeded {0} steps")]
    NonTermination(u64),

    #[error("vertices {0} are not the mean-set of the measure")]
    NotMeanSet(String),

    #[error("measure has a mean-set of size {0}; expected a singleton")]
    NonSingletonTruth(usize),

    #[error("graph is not a tree")]
    NotATree,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
