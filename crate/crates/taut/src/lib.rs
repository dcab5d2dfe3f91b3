//! Exact computer algebra for the top tautological group of the moduli space
//! of smooth pointed curves.
//!
//! The crate provides exact rational arithmetic and intersection constants,
//! linear algebra and sparse polynomials generic over the scalar field, a
//! formal calculus of double ramification cycles with its rewrite rules,
//! Hain's polynomial formula, and finite membership certificates for the
//! linear-algebra reductions of the socle argument.

pub mod arith;
pub mod cli;
pub mod dr;
pub mod error;
pub mod exactla;
pub mod hain;
pub mod intersect;
pub mod lemmas;
pub mod poly;
pub mod socle;
pub mod vz;

pub use error::{Error, Result};

/// Arbitrary-precision rational, the scalar field of every computation.
pub type Rat = num_rational::BigRational;
pub type RatMatrix = exactla::Matrix<Rat>;
pub type F64Matrix = exactla::Matrix<f64>;
pub type F32Matrix = exactla::Matrix<f32>;
pub type RatSubspace<L> = exactla::Subspace<L, Rat>;
pub type RatPoly = poly::MultiPoly<Rat>;
pub type F64Poly = poly::MultiPoly<f64>;
/// Formal linear combination of normalized DR symbols.
pub type TautVector = exactla::FreeModule<dr::DrSymbol, Rat>;
