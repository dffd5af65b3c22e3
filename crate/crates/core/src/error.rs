use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("endpoints must differ (got {0} twice)")]
    SameVertex(usize),
    #[error("no arc {0} -> {1}")]
    NoSuchArc(usize, usize),
    #[error("vertex {0} is not in the remainder after the prefix")]
    NotInRemainder(usize),
    #[error("vertex {0} is already removed")]
    AlreadyRemoved(usize),
    #[error("vertex {0} is not removed")]
    NotRemoved(usize),
    #[error("removal capacity {capacity} exceeded")]
    Capacity { capacity: usize },
    #[error("promise violated: heavy set of size {heavy} exceeds capacity {capacity}")]
    PromiseViolation { heavy: usize, capacity: usize },
    #[error("query parameter {k} exceeds promise bound {bound}")]
    ParameterTooLarge { k: usize, bound: usize },
    #[error("oracle supports n <= {max}, got {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
