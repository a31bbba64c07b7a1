//! Exact base fields, matrices, polynomials and finite extensions.

mod ext;
mod factor;
mod field;
pub mod matrix;
mod poly;
mod scalar;

pub use ext::{ExtField, ExtScalar, InverseInvolution};
pub use factor::{factor, is_irreducible, Factorization};
pub use field::Field;
pub use matrix::{Matrix, Vector};
pub use poly::{minimal_polynomial, Poly};
pub use scalar::Scalar;
