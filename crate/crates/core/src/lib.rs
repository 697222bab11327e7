//! Exact computations in the contraction category of graphs: configuration
//! space homology through the reduced Świątkowski complex, graphic matroid
//! invariants, growth experiments over subdivision and sprouting families, and
//! the combinatorics of planar rooted trees.

#![allow(clippy::needless_range_loop)]

pub mod corpus;
pub mod graph;
pub mod growth;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod scalar;
pub mod swiatkowski;
pub mod trees;

pub use graph::{Contraction, MultiGraph, Smooshing};
pub use scalar::{Overflow, Scalar};

pub use linalg::{SparseMatrix, SparseVector};

pub type IntMatrix = SparseMatrix<num_bigint::BigInt>;
pub type SmallIntMatrix = SparseMatrix<i64>;
pub type IntPolynomial = poly::Polynomial<num_bigint::BigInt>;
pub type RatPolynomial = poly::Polynomial<num_rational::BigRational>;
pub type RatMultiPolynomial = poly::MultiPolynomial<num_rational::BigRational>;
