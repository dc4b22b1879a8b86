//! Exact split-quaternion algebra, flat hypersymplectic structures, and the
//! combinatorial analysis of toric hypersymplectic quotients of `B^d` by
//! subtori of `T^d`.
//!
//! The algebraic layers are generic over [`Scalar`]; the concrete aliases
//! below fix the scalar to exact rationals or `f64`.

pub mod algebra;
pub mod convex;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod scalar;
pub mod toric;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Gaussian rational.
pub type ComplexQ = num_complex::Complex<Rational>;

pub type SplitQuaternionQ = algebra::SplitQuaternion<Rational>;
pub type SplitQuaternionF = algebra::SplitQuaternion<f64>;
pub type BVectorQ = algebra::BVector<Rational>;
pub type BMatrixQ = algebra::BMatrix<Rational>;
pub type FlatStructureQ = algebra::FlatStructure<Rational>;
pub type MatrixQ = linalg::Matrix<Rational>;
pub type MatrixF = linalg::Matrix<f64>;
