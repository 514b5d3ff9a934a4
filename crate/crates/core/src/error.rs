use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid vertex token {0:?}")]
    InvalidToken(String),

    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("map is not total: no image for {0:?}")]
    NotTotal(String),

    #[error("vertex {0:?} is assigned twice")]
    DuplicateAssignment(String),

    #[error("map is not a graph morphism: edge {0} ~ {1} is not preserved")]
    NotAMorphism(String, String),

    #[error("not a walk: {0} and {1} are not adjacent")]
    NotAWalk(String, String),

    #[error("a walk needs at least one vertex")]
    EmptyWalk,

    #[error("walks live in different graphs")]
    DifferentGraphs,

    #[error("cannot concatenate: walk ends at {0} but the next starts at {1}")]
    EndpointMismatch(String, String),

    #[error("vertex {0} is not looped")]
    Unlooped(String),

    #[error("graph is not reflexive: {0} has no loop")]
    NotReflexive(String),

    #[error("morphisms have different source or target")]
    ShapeMismatch,

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("bound {0} must be positive")]
    InvalidBound(&'static str),

    #[error("walk leaves the component of the basepoint at {0}")]
    OutsideComponent(String),

    #[error("vertex sets do not cover the graph: {0}")]
    CoverViolation(String),

    #[error("closed 4-walk ({0}) lies in neither part")]
    DiamondViolation(String),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Size guard failures get their own CLI exit code.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
