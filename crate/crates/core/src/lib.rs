//! Mesh-category Hom spaces, knitting and graded-center supports on stable
//! translation quivers, with a brute-force oracle over `k[t]/(t^n)`.

pub mod center;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod quiver;
pub mod report;

pub use error::{Error, Result};
pub use linalg::{FieldSpec, Matrix, Scalar};
pub use quiver::{QuiverKind, TranslationQuiver, Vertex};
