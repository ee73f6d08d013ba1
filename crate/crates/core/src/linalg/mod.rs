//! Exact linear algebra: dense matrices, fraction-free elimination,
//! Hessenberg characteristic polynomials and the multi-modular fast path.

pub mod bareiss;
pub mod hessenberg;
mod matrix;
pub mod modular;
mod poly;
mod scalar;

pub use matrix::Matrix;
pub use poly::IntegerPolynomial;
pub use scalar::{Field, Scalar};
