//! Coordinates on `F_{2r} / F_{2r−2}`, the Thom space of `τ^{2r−1}` over `ℙ¹`.
//!
//! A lattice at level exactly `r` contains a vector
//! `w = z^{−r}u₀ + z^{−r+1}u₁ + … + z^{r−1}u_{2r−1}` with `u₀ ≠ 0` and every
//! `u_j ⊥ u₀`, unique up to a scalar, and `W = ℂ[z]·w + z^r𝒦₊`.

use crate::arith::linalg::{self, Row};
use crate::arith::{hermitian_dot, GaussianRational, LaurentPoly, VectorLaurent};
use crate::error::{Error, Result};
use crate::loops::ConstantUnitary;

use super::window::slot_pair;
use super::{filtration_level, Lattice};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ThomPoint {
    Basepoint,
    /// Normalized so the first nonzero coordinate of `u0` is one.
    Point { u0: Vec<GaussianRational>, fiber: Vec<Vec<GaussianRational>> },
}

impl ThomPoint {
    pub fn point(u0: Vec<GaussianRational>, fiber: Vec<Vec<GaussianRational>>) -> Result<ThomPoint> {
        if u0.len() != 2 || fiber.iter().any(|u| u.len() != 2) {
            return Err(Error::DimensionMismatch("Thom coordinates live in ℚ(i)²".into()));
        }
        let lead = u0.iter().find(|c| !c.is_zero()).ok_or_else(|| Error::Domain("u0 must be nonzero".into()))?;
        if fiber.iter().any(|u| !hermitian_dot(u, &u0).is_zero()) {
            return Err(Error::Domain("fiber entries must be orthogonal to u0".into()));
        }
        let inv = lead.inv().unwrap();
        let scale = |v: &Vec<GaussianRational>| v.iter().map(|c| c * &inv).collect::<Vec<_>>();
        Ok(ThomPoint::Point { u0: scale(&u0), fiber: fiber.iter().map(scale).collect() })
    }

    pub fn is_basepoint(&self) -> bool {
        matches!(self, ThomPoint::Basepoint)
    }

    /// Whether the fiber coordinates all vanish (the zero section).
    pub fn on_zero_section(&self) -> bool {
        match self {
            ThomPoint::Basepoint => false,
            ThomPoint::Point { fiber, .. } => fiber.iter().flatten().all(GaussianRational::is_zero),
        }
    }

    pub fn act(&self, g: &ConstantUnitary) -> ThomPoint {
        match self {
            ThomPoint::Basepoint => ThomPoint::Basepoint,
            ThomPoint::Point { u0, fiber } => {
                ThomPoint::point(g.apply(u0), fiber.iter().map(|u| g.apply(u)).collect()).expect("unitary action")
            }
        }
    }
}

/// Thom coordinates of `w ∈ F_{2r}`; the basepoint on `F_{2r−2}`.
pub fn thom_coords(w: &Lattice, r: usize) -> Result<ThomPoint> {
    let level = filtration_level(w);
    if level > r {
        return Err(Error::Domain(format!("lattice has filtration level {level} > {r}")));
    }
    if r == 0 || level < r {
        return Ok(ThomPoint::Basepoint);
    }
    let w = w.with_window(r)?;
    let basis = w.basis_rows();
    let m = basis.len();
    let ri = r as i64;
    let images: Vec<[GaussianRational; 2]> = basis.iter().map(|b| slot_pair(b, r, -ri)).collect();
    let image_rows: Vec<Row> = images.iter().map(|p| p.to_vec()).collect();
    if linalg::rank(&image_rows, 2) != 1 {
        return Err(Error::InvariantViolation(format!(
            "slot -{r} image has dimension {}, expected 1",
            linalg::rank(&image_rows, 2)
        )));
    }
    let u0 = image_rows.iter().find(|p| p.iter().any(|c| !c.is_zero())).unwrap().clone();

    // unknowns: coefficients of x in the window basis
    let mut eqs: Vec<Row> = Vec::new();
    let mut rhs = Vec::new();
    for (k, target) in u0.iter().enumerate() {
        eqs.push(images.iter().map(|p| p[k].clone()).collect());
        rhs.push(target.clone());
    }
    for e in (-ri + 1)..ri {
        eqs.push(basis.iter().map(|b| hermitian_dot(&slot_pair(b, r, e), &u0)).collect());
        rhs.push(GaussianRational::zero());
    }
    let c = linalg::solve(&eqs, &rhs, m)
        .ok_or_else(|| Error::InvariantViolation("no vector with the required leading term and orthogonality".into()))?;
    let ambiguity = linalg::nullspace(&eqs, m).len();
    if ambiguity != 0 {
        return Err(Error::InvariantViolation(format!("Thom vector is not unique ({ambiguity}-dimensional family)")));
    }
    let x = linalg::combine(&c, basis, basis[0].len());
    let fiber = ((-ri + 1)..ri).map(|e| slot_pair(&x, r, e).to_vec()).collect();
    ThomPoint::point(u0, fiber)
}

/// The vector `w` assembled from Thom coordinates.
pub fn thom_vector(p: &ThomPoint, r: usize) -> Result<VectorLaurent> {
    let ThomPoint::Point { u0, fiber } = p else {
        return Err(Error::Domain("the basepoint is not a single lattice".into()));
    };
    if r == 0 || fiber.len() != 2 * r - 1 {
        return Err(Error::DimensionMismatch(format!("expected {} fiber vectors for r = {r}", (2 * r).saturating_sub(1))));
    }
    let ri = r as i64;
    let mut comps = vec![LaurentPoly::zero(), LaurentPoly::zero()];
    for (j, u) in std::iter::once(u0).chain(fiber).enumerate() {
        for (c, x) in u.iter().enumerate() {
            comps[c].add_term(j as i64 - ri, x);
        }
    }
    Ok(VectorLaurent::new(comps))
}

/// `ℂ[z]·w + z^r𝒦₊`.
pub fn lattice_from_thom(p: &ThomPoint, r: usize) -> Result<Lattice> {
    Lattice::from_generators(r, &[thom_vector(p, r)?])
}
