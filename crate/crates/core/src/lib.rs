//! Exact scalars, linear algebra, structure tensors and a catalog of algebras.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod ratfunc;
pub mod scalar;
pub mod structure;
pub mod tensor;

pub use algebra::{basis_vector, Algebra, Element, Operation};
pub use error::{Error, Result};
pub use linalg::{Echelon, Matrix, Subspace};
pub use poly::Poly;
pub use ratfunc::{RatFunc, UPoly};
pub use scalar::{q, ExactDiv, Field, Fp, Rational, Ring};
pub use tensor::StructureTensor;
