use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index sets do not partition [{m}]: {detail}")]
    PartitionViolation { m: usize, detail: String },
    #[error("the polyhedron is empty")]
    EmptyPolyhedron,
    #[error("point does not lie in the polyhedron")]
    PointNotInPolyhedron,
    #[error("zero normal vector in row {}", .0 + 1)]
    ZeroRow(usize),
    #[error("multi-arrangement unsupported: rows {} and {} are proportional", .0 + 1, .1 + 1)]
    MultiArrangement(usize, usize),
    #[error("sign vector {0} is not a face of the arrangement")]
    NotAFace(String),
    #[error("desk-scale exceeded: {0}")]
    DeskScaleExceeded(String),
    #[error("subset of open faces is empty")]
    EmptySubset,
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("element {} is a loop", .0 + 1)]
    Loop(usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}
