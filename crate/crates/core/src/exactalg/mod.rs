//! Exact algebra over the Gaussian rationals: scalars, polynomials,
//! multivector fields with the Schouten bracket, and dense linear algebra.

pub mod linalg;
pub mod multivec;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use linalg::ExactMatrix;
pub use multivec::{MultiVecError, MultiVecValue, PolyMultiVec};
pub use parse::{parse_poly, parse_scalar, ParseError};
pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
