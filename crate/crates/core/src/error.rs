use thiserror::Error;

/// Errors raised by the library's validating constructors and algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<u32>, reason: String },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<u32>),
    #[error("subset size {p} out of range 1..={r}")]
    ShadowSizeOutOfRange { p: usize, r: usize },
    #[error("Sperner property violated: pair {pair:?} lies inside hyperedge {edge:?}")]
    NotSperner { pair: (u32, u32), edge: Vec<u32> },
    #[error("witness references edge {0:?} which is not in the hypergraph")]
    DanglingEdge(Vec<u32>),
    #[error("instance too large for exact search ({0}); pass force to override")]
    InstanceTooLarge(String),
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
    #[error("Hall condition violated by pair set {pairs:?}")]
    HallViolated { pairs: Vec<(u32, u32)> },
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("n < k: graph has {n} vertices but k = {k}")]
    TooFewVertices { n: usize, k: usize },
    #[error("contains cycle of length {length}")]
    ContainsLongCycle { length: usize, cycle: Vec<u32> },
    #[error("parameter domain violation: {0}")]
    Domain(String),
    #[error("invalid construction spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
