use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground size {size} outside 1..={max}")]
    GroundSize { size: usize, max: usize },
    #[error("ground mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("element {element} not in ground of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("{what}: size {size} exceeds limit {limit}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("image is not a bijection of the ground")]
    NotBijective,
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("set {0} is not flow-invariant")]
    NotInvariant(String),
    #[error("set must be nonempty")]
    EmptySet,
    #[error("coherence variant {0} needs a cyclic flow")]
    VariantUnsupported(&'static str),
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error at {locus}: {message}")]
    Parse { locus: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
