use thiserror::Error;

use crate::quiver::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Entry or operand does not belong to the ambient field.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    /// A vertex needed by the computation lies outside the (enlarged) window.
    #[error("window error: vertex {vertex} lies outside window radius {radius}")]
    Window { vertex: Vertex, radius: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("kind mismatch: expected {expected}, got {got}")]
    KindMismatch { expected: String, got: String },

    #[error("algebra mismatch: {0}")]
    Algebra(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Internal consistency failure, e.g. paths of mixed length between a vertex pair.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// A verification produced a counterexample; the payload is a minimal witness.
    #[error("counterexample: {0}")]
    Counterexample(String),
}
