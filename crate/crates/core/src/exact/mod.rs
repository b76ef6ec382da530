//! Exact integer and rational matrix arithmetic.
//!
//! Cover homology and symplectic validation need characteristic
//! polynomials, determinants and Smith normal forms that are exact, not
//! floating; this module provides small dense matrices over `BigInt` and
//! `BigRational` with just the operations the rest of the crate uses.

mod int_matrix;
pub(crate) mod rat_matrix;
mod smith;

pub use int_matrix::IntMatrix;
pub use rat_matrix::RatMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
