//! Polynomial loops `f: S¹ → U(2)` with `f(1) = 1`, the conjugation action of
//! constant unitaries, and the Toeplitz index through winding numbers.

use std::fmt;

use crate::arith::{GaussianRational, LaurentMatrix, LaurentPoly, ScalarMatrix};
use crate::circle::winding_number;
use crate::error::{Error, Result};
use crate::lattice::ProjectivePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupTag {
    U2,
    SU2,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::U2 => "U(2)",
            GroupTag::SU2 => "SU(2)",
        })
    }
}

/// One failed loop invariant. `check_poly_loop` collects all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopViolation {
    Dimension { n: usize },
    Basepoint,
    Unitarity,
    SupportWindow { lo: i64, hi: i64, bound: i64 },
    Determinant { det: String },
}

impl LoopViolation {
    pub fn kind(&self) -> &'static str {
        match self {
            LoopViolation::Dimension { .. } => "dimension",
            LoopViolation::Basepoint => "basepoint",
            LoopViolation::Unitarity => "unitarity",
            LoopViolation::SupportWindow { .. } => "support-window",
            LoopViolation::Determinant { .. } => "determinant",
        }
    }
}

impl fmt::Display for LoopViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopViolation::Dimension { n } => write!(f, "expected a 2×2 matrix, got {n}×{n}"),
            LoopViolation::Basepoint => write!(f, "f(1) is not the identity"),
            LoopViolation::Unitarity => write!(f, "f·f* is not the identity"),
            LoopViolation::SupportWindow { lo, hi, bound } => {
                write!(f, "exponents [{lo}, {hi}] leave the window [-{bound}, {bound}]")
            }
            LoopViolation::Determinant { det } => write!(f, "det f = {det}, expected 1"),
        }
    }
}

/// A validated element of `Ω_poly,r U(2)` or `Ω_poly,r SU(2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitaryLoop {
    matrix: LaurentMatrix,
    degree_bound: usize,
    tag: GroupTag,
}

impl UnitaryLoop {
    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    /// Smallest `r` for which the loop passes the support check.
    pub fn minimal_degree(&self) -> usize {
        self.matrix.support().map_or(0, |(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()) as usize)
    }

    /// The same loop with a different degree bound, revalidated.
    pub fn with_degree_bound(&self, r: usize) -> Result<UnitaryLoop> {
        check_poly_loop(&self.matrix, r, self.tag)
    }
}

/// A constant unitary matrix `g` with `g·g* = 1` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstantUnitary {
    matrix: ScalarMatrix,
}

impl ConstantUnitary {
    pub fn new(matrix: ScalarMatrix) -> Result<Self> {
        if !matrix.mul(&matrix.conj_transpose()).is_identity() {
            return Err(Error::NotUnitary);
        }
        Ok(ConstantUnitary { matrix })
    }

    /// Like `new`, additionally requiring `det g = 1`.
    pub fn special(matrix: ScalarMatrix) -> Result<Self> {
        let g = ConstantUnitary::new(matrix)?;
        let d = g.matrix.det();
        if !d.is_one() {
            return Err(Error::NotSpecialUnitary(d.to_string()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        ConstantUnitary { matrix: ScalarMatrix::identity(2) }
    }

    /// `((c, s), (−s, c))` for rationals with `c² + s² = 1`, e.g. `(3/5, 4/5)`.
    pub fn rotation(c: GaussianRational, s: GaussianRational) -> Result<Self> {
        let m = ScalarMatrix::from_rows(vec![vec![c.clone(), s.clone()], vec![-s, c]])?;
        ConstantUnitary::special(m)
    }

    /// `((a, b), (−conj b, conj a))` with `|a|² + |b|² = 1`.
    pub fn su2(a: GaussianRational, b: GaussianRational) -> Result<Self> {
        let m = ScalarMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![-b.conj(), a.conj()]])?;
        ConstantUnitary::special(m)
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> ConstantUnitary {
        ConstantUnitary { matrix: self.matrix.conj_transpose() }
    }

    pub fn compose(&self, other: &ConstantUnitary) -> ConstantUnitary {
        ConstantUnitary { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        self.matrix.apply(v)
    }

    pub fn is_special(&self) -> bool {
        self.matrix.det().is_one()
    }
}

/// Validates a Laurent matrix as a based polynomial loop with exponents in the
/// window `[−r(n−1), r(n−1)]`, reporting every failed invariant.
pub fn check_poly_loop(m: &LaurentMatrix, r: usize, tag: GroupTag) -> Result<UnitaryLoop> {
    let n = m.n();
    let mut violations = Vec::new();
    if n != 2 {
        violations.push(LoopViolation::Dimension { n });
    }
    let one = GaussianRational::one();
    if !m.eval(&one).is_some_and(|v| v.is_identity()) {
        violations.push(LoopViolation::Basepoint);
    }
    if !m.mul(&m.star())?.is_identity() {
        violations.push(LoopViolation::Unitarity);
    }
    let bound = (r * n.saturating_sub(1)) as i64;
    if let Some((lo, hi)) = m.support() {
        if lo < -bound || hi > bound {
            violations.push(LoopViolation::SupportWindow { lo, hi, bound });
        }
    }
    if tag == GroupTag::SU2 {
        let d = m.det();
        if !d.is_one() {
            violations.push(LoopViolation::Determinant { det: d.to_string() });
        }
    }
    if violations.is_empty() {
        Ok(UnitaryLoop { matrix: m.clone(), degree_bound: r, tag })
    } else {
        Err(Error::InvalidLoop(violations))
    }
}

/// `z ↦ g f(z) g⁻¹`.
pub fn conjugate_action(g: &ConstantUnitary, f: &UnitaryLoop) -> Result<UnitaryLoop> {
    let gl = LaurentMatrix::from_scalar(g.matrix());
    let gi = LaurentMatrix::from_scalar(&g.matrix().conj_transpose());
    let m = gl.mul(f.matrix())?.mul(&gi)?;
    check_poly_loop(&m, f.degree_bound, f.tag)
}

/// `−n · winding(det f)` with `n = 2`.
pub fn index_of_loop(f: &UnitaryLoop) -> Result<i64> {
    let w = winding_number(&f.matrix().det())?;
    Ok(-(f.matrix().n() as i64) * w.winding)
}

/// `λ_r = diag(z^r, z^{−r})`.
pub fn lambda_r(r: usize) -> UnitaryLoop {
    let r = r as i64;
    UnitaryLoop { matrix: LaurentMatrix::diag_monomials(r, -r), degree_bound: r as usize, tag: GroupTag::SU2 }
}

/// `S λ_r S⁻¹` where `S = [u v]` has orthogonal columns and `v` spans `line`.
/// Only the lines of `u` and `v` matter, so no unit representative is needed.
/// With a caller-supplied `g`, returns `g λ_r g⁻¹` after checking `g e₂ ∈ line`.
pub fn generator_loop(r: usize, line: &ProjectivePoint, g: Option<&ConstantUnitary>) -> Result<UnitaryLoop> {
    let s = match g {
        Some(g) => {
            if ProjectivePoint::new(g.apply(&[GaussianRational::zero(), GaussianRational::one()]))? != *line {
                return Err(Error::Domain("g·e₂ does not span the requested line".into()));
            }
            g.matrix().clone()
        }
        None => {
            let v = line.coords().to_vec();
            let u = line.orthogonal().coords().to_vec();
            ScalarMatrix::from_rows(vec![vec![u[0].clone(), v[0].clone()], vec![u[1].clone(), v[1].clone()]])?
        }
    };
    let s_inv = s.inverse().ok_or_else(|| Error::Domain("singular change of basis".into()))?;
    let m = LaurentMatrix::from_scalar(&s)
        .mul(lambda_r(r).matrix())?
        .mul(&LaurentMatrix::from_scalar(&s_inv))?;
    check_poly_loop(&m, r, GroupTag::SU2)
}

/// Pointwise product; the degree bounds add.
pub fn pointwise_product(f: &UnitaryLoop, g: &UnitaryLoop) -> Result<UnitaryLoop> {
    let tag = if f.tag == GroupTag::SU2 && g.tag == GroupTag::SU2 { GroupTag::SU2 } else { GroupTag::U2 };
    check_poly_loop(&f.matrix().mul(g.matrix())?, f.degree_bound + g.degree_bound, tag)
}

/// `diag(z^k, 1)` as a `U(2)` loop with bound `|k|`.
pub fn diag_u2(k: i64) -> UnitaryLoop {
    let m = LaurentMatrix::diag(vec![LaurentPoly::z(k), LaurentPoly::one()]);
    UnitaryLoop { matrix: m, degree_bound: k.unsigned_abs() as usize, tag: GroupTag::U2 }
}
