//! Exact coefficient arithmetic: ℚ(i), Laurent polynomials, Laurent matrices.

mod gaussian;
mod laurent;
pub mod linalg;
mod matrix;

pub use gaussian::{format_rational, parse_rational, rational_to_f64, GaussianRational};
pub use laurent::LaurentPoly;
pub use matrix::{hermitian_dot, LaurentMatrix, ScalarMatrix, VectorLaurent};

use crate::error::Error;

/// Exact product; support bounds of the result lie within the sums of the
/// input bounds.
pub fn laurent_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> Result<LaurentMatrix, Error> {
    a.mul(b)
}

/// Conjugate transpose with `z ↦ z⁻¹`.
pub fn star(a: &LaurentMatrix) -> LaurentMatrix {
    a.star()
}

pub fn det(a: &LaurentMatrix) -> LaurentPoly {
    a.det()
}

/// Top exponent of a vector; `None` encodes minus infinity.
pub fn vec_degree(v: &VectorLaurent) -> Option<i64> {
    v.degree()
}
