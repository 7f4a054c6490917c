//! Spin state sum TQFTs in two dimensions: Frobenius algebra data, crossing maps,
//! spin-structured triangulations and the partition functions built from them.

pub mod algebra;
pub mod closed_forms;
pub mod constructors;
pub mod crossings;
pub mod error;
pub mod evaluator;
pub mod io;
pub mod linalg;
pub mod solver;
mod sparse;
pub mod surfaces;
pub mod tensor;

pub use num_complex::Complex64 as Scalar;

/// Default relative tolerance for axiom checks.
pub const DEFAULT_TOL: f64 = 1e-9;

pub use algebra::{build_algebra, validate, AlgebraData, ValidationReport};
pub use error::{Error, Result};
pub use tensor::Tensor;
