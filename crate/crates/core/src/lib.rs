//! Exact computations for the fixed-point subalgebra of the quasi-split
//! symmetric pair of type A, its idempotent form and its geometric modules.

pub mod acceptance;
pub mod algebra;
pub mod error;
pub mod exactnum;
pub mod indexing;
pub mod limits;
pub mod modules;
pub mod partitions;

pub use error::{Error, Result};

/// Exact rational numbers with arbitrary-precision parts.
pub type Rational = num_rational::BigRational;

/// The sparse matrix type used throughout the crate.
pub type QMatrix = exactnum::SparseMatrix<Rational>;

/// Shorthand for the rational image of an integer.
pub fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}
