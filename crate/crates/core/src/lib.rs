//! Exact linear algebra over `Q` and prime fields, and tools for matrix pencils
//! (n-Kronecker modules): eigenvector varieties, the canonical module, realization of
//! quadric-defined varieties and reflection functors.

pub mod canonical;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod pencil;
pub mod projective;
pub mod random;
pub mod realize;
pub mod reflect;
pub mod subspace;
pub mod suites;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use pencil::{DimensionVector, MatrixPencil, Vertex};
pub use projective::ProjectivePoint;
pub use subspace::Subspace;
