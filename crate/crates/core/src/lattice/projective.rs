use std::fmt;

use crate::arith::{hermitian_dot, GaussianRational, LaurentMatrix, ScalarMatrix};
use crate::error::{Error, Result};
use crate::loops::{check_poly_loop, lambda_r, ConstantUnitary, GroupTag, UnitaryLoop};

/// A point `[a : b]` of `ℙ¹` over `ℚ(i)`, stored with its first nonzero
/// coordinate equal to one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<GaussianRational>,
}

impl ProjectivePoint {
    pub fn new(v: Vec<GaussianRational>) -> Result<Self> {
        if v.len() != 2 {
            return Err(Error::DimensionMismatch(format!("projective point needs 2 coordinates, got {}", v.len())));
        }
        let lead = v.iter().find(|c| !c.is_zero()).ok_or_else(|| Error::Domain("zero vector has no line".into()))?;
        let inv = lead.inv().unwrap();
        Ok(ProjectivePoint { coords: v.iter().map(|c| c * &inv).collect() })
    }

    pub fn e1() -> Self {
        ProjectivePoint { coords: vec![GaussianRational::one(), GaussianRational::zero()] }
    }

    pub fn e2() -> Self {
        ProjectivePoint { coords: vec![GaussianRational::zero(), GaussianRational::one()] }
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    /// The orthogonal line `[−conj b : conj a]`.
    pub fn orthogonal(&self) -> ProjectivePoint {
        let (a, b) = (&self.coords[0], &self.coords[1]);
        ProjectivePoint::new(vec![-b.conj(), a.conj()]).unwrap()
    }

    pub fn act(&self, g: &ConstantUnitary) -> ProjectivePoint {
        ProjectivePoint::new(g.apply(&self.coords)).unwrap()
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        let det = &(&self.coords[0] * &v[1]) - &(&self.coords[1] * &v[0]);
        det.is_zero()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.coords[0], self.coords[1])
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The homomorphism `λ = diag(z^r, z^{−r})` written in an orthogonal basis
/// `(u, v)`. The vectors need not be unit: `S λ_r S⁻¹` with `S = [u v]` only
/// depends on their lines, and keeping them unnormalized keeps it exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomomorphismData {
    r: usize,
    basis: Option<(Vec<GaussianRational>, Vec<GaussianRational>)>,
}

impl HomomorphismData {
    pub fn trivial() -> Self {
        HomomorphismData { r: 0, basis: None }
    }

    /// Canonical representatives: `v` spans `line`, `u` spans its orthogonal.
    pub fn from_line(r: usize, line: &ProjectivePoint) -> Self {
        if r == 0 {
            return HomomorphismData::trivial();
        }
        HomomorphismData { r, basis: Some((line.orthogonal().coords.clone(), line.coords.clone())) }
    }

    pub fn from_vectors(r: usize, u: Vec<GaussianRational>, v: Vec<GaussianRational>) -> Result<Self> {
        if r == 0 {
            return Ok(HomomorphismData::trivial());
        }
        if u.len() != 2 || v.len() != 2 {
            return Err(Error::DimensionMismatch("u and v must lie in ℚ(i)²".into()));
        }
        if u.iter().all(GaussianRational::is_zero) || v.iter().all(GaussianRational::is_zero) {
            return Err(Error::Domain("u and v must be nonzero".into()));
        }
        if !hermitian_dot(&u, &v).is_zero() {
            return Err(Error::Domain("u and v are not orthogonal".into()));
        }
        Ok(HomomorphismData { r, basis: Some((u, v)) })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn u(&self) -> Option<&[GaussianRational]> {
        self.basis.as_ref().map(|(u, _)| u.as_slice())
    }

    pub fn v(&self) -> Option<&[GaussianRational]> {
        self.basis.as_ref().map(|(_, v)| v.as_slice())
    }

    /// The line spanned by `v`, i.e. `π` of the lattices in this stratum.
    pub fn line(&self) -> Option<ProjectivePoint> {
        self.v().map(|v| ProjectivePoint::new(v.to_vec()).unwrap())
    }

    pub fn act(&self, g: &ConstantUnitary) -> HomomorphismData {
        HomomorphismData { r: self.r, basis: self.basis.as_ref().map(|(u, v)| (g.apply(u), g.apply(v))) }
    }

    /// `S = [u v]`; identity for the trivial homomorphism.
    pub fn change_of_basis(&self) -> ScalarMatrix {
        match &self.basis {
            None => ScalarMatrix::identity(2),
            Some((u, v)) => ScalarMatrix::from_rows(vec![vec![u[0].clone(), v[0].clone()], vec![u[1].clone(), v[1].clone()]])
                .unwrap(),
        }
    }

    /// `λ(z)` as a loop in `Ω_poly,r SU(2)`.
    pub fn as_loop(&self) -> UnitaryLoop {
        let s = self.change_of_basis();
        let si = s.inverse().expect("orthogonal nonzero columns");
        let m = LaurentMatrix::from_scalar(&s)
            .mul(lambda_r(self.r).matrix())
            .and_then(|m| m.mul(&LaurentMatrix::from_scalar(&si)))
            .unwrap();
        check_poly_loop(&m, self.r, GroupTag::SU2).expect("conjugate of λ_r is a valid loop")
    }
}
