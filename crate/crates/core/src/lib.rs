//! Exact polynomial loops in `U(2)` and `SU(2)` and the `z`-stable lattices
//! they cut out of `𝒦 = L²(S¹) ⊗ ℂ²`, computed over the Gaussian rationals.

pub mod arith;
pub mod beta;
pub mod circle;
pub mod corpus;
pub mod error;
pub mod json;
pub mod ktheory;
pub mod lattice;
pub mod loops;
pub mod strata;

pub use arith::{GaussianRational, LaurentMatrix, LaurentPoly, ScalarMatrix, VectorLaurent};
pub use error::{Error, Result};
pub use lattice::{HomomorphismData, Lattice, ProjectivePoint, ThomPoint};
pub use loops::{ConstantUnitary, GroupTag, UnitaryLoop};
