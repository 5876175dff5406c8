//! `β`: recover the loop of a lattice from an orthogonal basis of `W ⊖ zW`.
//!
//! Columns are kept unnormalized together with their exact squared norms. The
//! represented loop is `Ñ(z)·Ñ(1)⁻¹`: with `N = Ñ·D⁻¹` the normalized matrix,
//! `N(z)N(1)⁻¹ = Ñ(z)Ñ(1)⁻¹`, so it has entries in `ℚ(i)` and never needs a
//! square root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::linalg::{self, Row};
use crate::arith::{GaussianRational, LaurentMatrix, ScalarMatrix, VectorLaurent};
use crate::error::{Error, Result};
use crate::lattice::window::{shift_row, to_vector};
use crate::lattice::Lattice;
use crate::loops::UnitaryLoop;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledVector {
    pub vector: VectorLaurent,
    pub norm_sq: BigRational,
}

impl ScaledVector {
    fn new(vector: VectorLaurent) -> Self {
        let norm_sq = vector.components.iter().fold(BigRational::zero(), |acc, p| acc + p.norm_sq());
        ScaledVector { vector, norm_sq }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledLoop {
    pub nb: LaurentMatrix,
    pub norms_sq: [BigRational; 2],
}

fn dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    crate::arith::hermitian_dot(a, b)
}

/// Scale a row to Gaussian-integer coordinates with no common rational factor.
fn clear_denominators(row: &Row) -> Row {
    let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let scaled: Row = row.iter().map(|c| c.scale(&BigRational::from_integer(l.clone()))).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.re().numer()).gcd(c.im().numer()));
    if g.is_zero() || g.is_one() {
        return scaled;
    }
    let inv = BigRational::new(BigInt::one(), g);
    scaled.iter().map(|c| c.scale(&inv)).collect()
}

fn min_slot(row: &Row) -> usize {
    row.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX)
}

/// Orthogonal basis of `W ⊖ zW`, computed in the exponent window `[−r, r]`,
/// ordered by minimal slot.
pub fn complement_basis(w: &Lattice) -> Result<[ScaledVector; 2]> {
    let big_r = w.r() + 1;
    // W ∩ z^{−r}𝒦₊ modulo z^{r+1}𝒦₊, and z·W in the same window
    let ext = w.span().widen(big_r);
    let basis = ext.basis();
    let zw: Vec<Row> = basis.iter().map(|b| shift_row(b)).collect();
    let m = basis.len();
    let gram: Vec<Row> = zw.iter().map(|y| basis.iter().map(|b| dot(b, y)).collect()).collect();
    let coeffs = linalg::nullspace(&gram, m);
    if coeffs.len() != 2 {
        return Err(Error::InvariantViolation(format!("W ⊖ zW has dimension {}, expected 2", coeffs.len())));
    }
    let ncols = basis[0].len();
    let xs: Vec<Row> = coeffs.iter().map(|c| linalg::combine(c, basis, ncols)).collect();
    let (xs, _) = linalg::rref(xs, ncols);
    // Gram–Schmidt from the later pivot keeps the two minimal slots distinct
    let v1 = xs[1].clone();
    let f = &dot(&xs[0], &v1) / &dot(&v1, &v1);
    let v2: Row = xs[0].iter().zip(&v1).map(|(a, b)| a - &(&f * b)).collect();
    let mut cols = [clear_denominators(&v2), clear_denominators(&v1)];
    cols.sort_by_key(min_slot);
    let [a, b] = cols;
    Ok([ScaledVector::new(to_vector(&a, big_r)), ScaledVector::new(to_vector(&b, big_r))])
}

pub fn beta(w: &Lattice) -> Result<ScaledLoop> {
    let [a, b] = complement_basis(w)?;
    let nb = LaurentMatrix::from_columns(&[a.vector, b.vector])?;
    Ok(ScaledLoop { nb, norms_sq: [a.norm_sq, b.norm_sq] })
}

impl ScaledLoop {
    fn at_one_inverse(&self) -> Result<ScalarMatrix> {
        self.nb
            .eval(&GaussianRational::one())
            .and_then(|m| m.inverse())
            .ok_or_else(|| Error::InvariantViolation("Ñ(1) is singular".into()))
    }

    /// The represented loop `Ñ(z)·Ñ(1)⁻¹`.
    pub fn loop_matrix(&self) -> Result<LaurentMatrix> {
        self.nb.mul(&LaurentMatrix::from_scalar(&self.at_one_inverse()?))
    }

    /// `det Ñ(z) / det Ñ(1) ≡ 1`, the determinant of the represented loop.
    pub fn is_special_linear(&self) -> Result<bool> {
        let d1 = self.nb.eval(&GaussianRational::one()).map(|m| m.det()).unwrap_or_default();
        if d1.is_zero() {
            return Err(Error::InvariantViolation("Ñ(1) is singular".into()));
        }
        Ok(self.nb.det().scale(&d1.inv().unwrap()).is_one())
    }

    /// Whether the `ℂ[z]`-span of the columns of `Ñ` is `w`.
    pub fn generates(&self, w: &Lattice) -> bool {
        Lattice::from_generators(w.r(), &self.nb.columns()).is_ok_and(|v| v == *w)
    }
}

/// Exact equality of the represented loop with `f`.
pub fn scaled_loop_equals(s: &ScaledLoop, f: &UnitaryLoop) -> Result<bool> {
    Ok(s.loop_matrix()? == *f.matrix())
}

/// A complex ball `mid ± radius` with dyadic rational center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexBall {
    pub fn to_f64(&self) -> (f64, f64) {
        (crate::arith::rational_to_f64(&self.re), crate::arith::rational_to_f64(&self.im))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub entries: Vec<Vec<ComplexBall>>,
    /// Common radius `2^{−bits}` for every real and imaginary part.
    pub radius: BigRational,
    /// The enclosed exact value satisfies `M·M* = 1`.
    pub unitary: bool,
}

pub const MAX_BITS: u32 = 4096;

fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(BigInt::one() << bits as usize);
    (x * &scale).round() / scale
}

/// Enclosure of `f(point)` for a point with `|point| = 1` exactly.
pub fn evaluate_scaled_loop(s: &ScaledLoop, point: &GaussianRational, bits: u32) -> Result<Enclosure> {
    if bits == 0 || bits > MAX_BITS {
        return Err(Error::Precision(format!("requested {bits} bits; supported range is 1..={MAX_BITS}")));
    }
    if !point.norm_sq().is_one() {
        return Err(Error::Domain(format!("{point} is not on the unit circle")));
    }
    let m = s.loop_matrix()?.eval(point).expect("nonzero point");
    let unitary = m.mul(&m.conj_transpose()).is_identity();
    let entries = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|c| ComplexBall { re: round_dyadic(c.re(), bits), im: round_dyadic(c.im(), bits) }).collect())
        .collect();
    let radius = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
    Ok(Enclosure { entries, radius, unitary })
}
