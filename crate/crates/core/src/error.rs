use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex} appears in clusters {first} and {second}")]
    OverlappingClusters {
        vertex: usize,
        first: usize,
        second: usize,
    },

    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    #[error("cluster {0} does not induce a connected subgraph")]
    DisconnectedCluster(usize),

    #[error("cluster {0} does not induce a tree")]
    NonTreeCluster(usize),

    #[error("clusters {0} and {1} are joined by more than one edge")]
    MultiEdgePair(usize, usize),

    #[error("vertex {0} is not covered by any cluster")]
    NonCover(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph contains a cycle")]
    Cyclic,

    #[error("probability {0} outside [0, 1]")]
    Probability(f64),

    #[error("graph has {n} vertices, above the cap of {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("construction infeasible: {0}")]
    Construction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("trial {index}: {source}")]
    Trial {
        index: u64,
        #[source]
        source: Box<Error>,
    },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
