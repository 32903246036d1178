//! Exact computation with n-Lie algebras, coalgebras and bialgebras given by
//! structure constants over the rationals.

pub mod algebra;
pub mod an_solver;
pub mod bialgebra;
pub mod catalog;
pub mod coalgebra;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod random;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use algebra::{StructureConstants, VectorElement};
pub use bialgebra::Bialgebra;
pub use catalog::{CanonicalLabel, Classification};
pub use coalgebra::Comultiplication;
pub use error::{Error, Result};
pub use extension::BilinearForm;
pub use linalg::Matrix;
pub use report::{Residual, ValidationReport, Violation};
pub use scalar::Scalar;
pub use tensor::TensorElement;
