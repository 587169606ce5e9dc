//! Exact and numeric tools for matrix representations of generalized
//! Clifford algebras of forms, and the Picard-lattice calculus of smooth
//! cubic surfaces that classifies them.

pub mod clifford;
pub mod error;
pub mod lattice;
pub mod linearizer;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod scalar;

pub use error::{AlgebraError, Error, Result};
pub use matrix::Matrix;
pub use poly::{Monomial, Poly};
pub use polymatrix::PolyMatrix;
pub use scalar::{CyclotomicScalar, Rational};
