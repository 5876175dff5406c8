//! Strata `Σ_λ ⊂ U_λ` and the bundle chart `φ` presenting `U_λ` as a vector
//! bundle of rank `2r − 1` over `Σ_λ`.
//!
//! Matrices here are written in the basis `(u, v)` attached to `λ`, with
//! `𝒦_λ = λ𝒦₊ = z^r ℂ[z] u ⊕ z^{−r} ℂ[z] v`. Stratum data `a, b, c, d` are
//! polynomials in `w = z⁻¹`, entering
//!
//! ```text
//! A = [ 1 + z⁻¹a(z⁻¹)      b(z⁻¹)          ]
//!     [ z^{−2r−1}c(z⁻¹)    1 + z⁻¹d(z⁻¹)   ]
//! ```
//!
//! and a point of `Σ_λ` is `W_{A(z^r, 0), A(0, z^{−r})}`.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::linalg::{self, Row};
use crate::arith::{hermitian_dot, GaussianRational, LaurentMatrix, LaurentPoly, VectorLaurent};
use crate::circle::{circle_certificate, count_roots_in_open_unit_disk};
use crate::error::{Error, Result};
use crate::lattice::window::{slot_pair, to_row, to_vector};
use crate::lattice::{pi, rank, HomomorphismData, Lattice, ProjectivePoint};
use crate::loops::ConstantUnitary;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StratumData {
    lambda: HomomorphismData,
    a: Vec<GaussianRational>,
    b: Vec<GaussianRational>,
    c: Vec<GaussianRational>,
    d: Vec<GaussianRational>,
}

/// Coefficients `a₀, …, a_{2r−2}` of `e(z)`, each multiplying `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberVector(pub Vec<GaussianRational>);

impl FiberVector {
    pub fn zero(r: usize) -> Self {
        FiberVector(vec![GaussianRational::zero(); 2 * r - 1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GaussianRational::is_zero)
    }
}

fn trim(mut v: Vec<GaussianRational>) -> Vec<GaussianRational> {
    while v.last().is_some_and(GaussianRational::is_zero) {
        v.pop();
    }
    v
}

/// `z^shift · p(z⁻¹)` for ascending coefficients `p`.
fn in_inverse(p: &[GaussianRational], shift: i64) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().map(|(k, c)| (shift - k as i64, c.clone())))
}

impl StratumData {
    /// Validates `r > 0` and certifies that `det A` has no zero on `|z| ≥ 1`.
    pub fn new(
        lambda: HomomorphismData,
        a: Vec<GaussianRational>,
        b: Vec<GaussianRational>,
        c: Vec<GaussianRational>,
        d: Vec<GaussianRational>,
    ) -> Result<Self> {
        if lambda.r() == 0 {
            return Err(Error::Domain("stratum data needs a homomorphism with r > 0".into()));
        }
        let s = StratumData { lambda, a: trim(a), b: trim(b), c: trim(c), d: trim(d) };
        s.certify_invertible()?;
        Ok(s)
    }

    /// `A = 1`: the zero section point `s_r(π)`.
    pub fn identity(lambda: HomomorphismData) -> Result<Self> {
        StratumData::new(lambda, vec![], vec![], vec![], vec![])
    }

    pub fn lambda(&self) -> &HomomorphismData {
        &self.lambda
    }

    pub fn r(&self) -> usize {
        self.lambda.r()
    }

    pub fn abcd(&self) -> [&[GaussianRational]; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `A(z)` in the `(u, v)` basis.
    pub fn matrix(&self) -> LaurentMatrix {
        let r = self.r() as i64;
        let one = LaurentPoly::one();
        LaurentMatrix::from_rows(vec![
            vec![&one + &in_inverse(&self.a, -1), in_inverse(&self.b, 0)],
            vec![in_inverse(&self.c, -2 * r - 1), &one + &in_inverse(&self.d, -1)],
        ])
        .unwrap()
    }

    fn certify_invertible(&self) -> Result<()> {
        // det A is a polynomial in w = z⁻¹ with constant term 1
        let q = self.matrix().det().reflect();
        if !q.is_polynomial() || q.coeff(0) != GaussianRational::one() {
            return Err(Error::NotInvertible(format!("det A = {} is not 1 + O(z⁻¹)", self.matrix().det())));
        }
        if let Some(cert) = circle_certificate(&q)? {
            return Err(Error::NotInvertible(format!("det A vanishes on |z| = 1 ({cert})")));
        }
        let inside = count_roots_in_open_unit_disk(&q)?;
        if inside > 0 {
            return Err(Error::NotInvertible(format!("det A has {inside} zero(s) in |z| > 1")));
        }
        Ok(())
    }

    pub fn act(&self, g: &ConstantUnitary) -> StratumData {
        StratumData { lambda: self.lambda.act(g), ..self.clone() }
    }

    /// The data of `H_t`: `a_k ↦ t^{k+1}a_k`, `b_k ↦ t^{r+k}b_k`,
    /// `c_k ↦ t^{r+1+k}c_k`, `d_k ↦ t^{k+1}d_k`.
    fn rescaled(&self, t: &BigRational) -> StratumData {
        let r = self.r() as u32;
        let tg = GaussianRational::real(t.clone());
        let sc = |v: &[GaussianRational], base: u32| {
            trim(v.iter().enumerate().map(|(k, x)| x * &tg.pow(base + k as u32)).collect())
        };
        StratumData {
            lambda: self.lambda.clone(),
            a: sc(&self.a, 1),
            b: sc(&self.b, r),
            c: sc(&self.c, r + 1),
            d: sc(&self.d, 1),
        }
    }
}

fn uv(lambda: &HomomorphismData) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
    match (lambda.u(), lambda.v()) {
        (Some(u), Some(v)) => (u.to_vec(), v.to_vec()),
        _ => (ProjectivePoint::e1().coords().to_vec(), ProjectivePoint::e2().coords().to_vec()),
    }
}

/// `p·u + q·v` in standard coordinates.
fn from_uv(p: &LaurentPoly, q: &LaurentPoly, u: &[GaussianRational], v: &[GaussianRational]) -> VectorLaurent {
    VectorLaurent::new((0..2).map(|i| &p.scale(&u[i]) + &q.scale(&v[i])).collect())
}

/// Coordinate of `y` along `u` (for `u ⊥ v`), coefficientwise.
fn coord(y: &VectorLaurent, u: &[GaussianRational]) -> LaurentPoly {
    let n = u.iter().fold(GaussianRational::zero(), |acc, x| acc + GaussianRational::real(x.norm_sq()));
    let inv = n.inv().unwrap();
    (&y.components[0].scale(&(&u[0].conj() * &inv))) + &y.components[1].scale(&(&u[1].conj() * &inv))
}

/// The lattice `ℂ[z]·g₁ + ℂ[z]·g₂` when it is bounded, in the smallest window
/// that holds it (at least `min_r`).
fn bounded_lattice(gens: [VectorLaurent; 2], min_r: usize) -> Result<Lattice> {
    let m = LaurentMatrix::from_columns(&gens)?;
    let det = m.det();
    if !det.is_monomial() || det.lo() != Some(0) {
        return Err(Error::Unbounded(format!("generator determinant {det} is not a nonzero constant")));
    }
    let adj = m.adjugate2()?;
    let lo = |x: &LaurentMatrix| x.support().map_or(0, |(lo, _)| (-lo).max(0) as usize);
    let r = lo(&m).max(lo(&adj)).max(min_r);
    Lattice::from_generators(r, &gens)
}

/// `s_r(x) = W_{z^r u, z^{−r} v}` with `v` spanning `x`.
pub fn section_s_r(x: &ProjectivePoint, r: usize) -> Result<Lattice> {
    if r == 0 {
        return Err(Error::Domain("the section is defined for r > 0".into()));
    }
    let lam = HomomorphismData::from_line(r, x);
    let (u, v) = uv(&lam);
    let ri = r as i64;
    Lattice::from_generators(r, &[VectorLaurent::monomial(ri, &u), VectorLaurent::monomial(-ri, &v)])
}

/// Rows: window basis of `w` at `R`. Columns: `⟨x_k, u⟩` for `k ∈ [r, R)` then
/// `⟨x_k, v⟩` for `k ∈ [−r, R)`: coordinates of the orthogonal projection to
/// `𝒦_λ` modulo `z^R𝒦₊`.
fn projection_matrix(w: &Lattice, lam: &HomomorphismData, big_r: usize) -> Result<(Lattice, Vec<Row>)> {
    let w = w.with_window(big_r)?;
    let (u, v) = uv(lam);
    let (r, br) = (lam.r() as i64, big_r as i64);
    let rows = w
        .basis_rows()
        .iter()
        .map(|x| projection_coords(x, big_r, r, br, &u, &v))
        .collect();
    Ok((w, rows))
}

fn projection_coords(x: &[GaussianRational], big_r: usize, r: i64, br: i64, u: &[GaussianRational], v: &[GaussianRational]) -> Row {
    let mut row = Vec::with_capacity(2 * big_r);
    for k in r..br {
        row.push(hermitian_dot(&slot_pair(x, big_r, k), u));
    }
    for k in -r..br {
        row.push(hermitian_dot(&slot_pair(x, big_r, k), v));
    }
    row
}

fn working_window(w: &Lattice, lam: &HomomorphismData) -> usize {
    w.r().max(lam.r()) + 1
}

/// Whether the orthogonal projection `W → 𝒦_λ` is an isomorphism.
pub fn in_u_lambda(w: &Lattice, lam: &HomomorphismData) -> bool {
    let big_r = working_window(w, lam);
    let (_, m) = projection_matrix(w, lam, big_r).expect("widening never fails");
    linalg::rank(&m, 2 * big_r) == 2 * big_r
}

/// `W ∈ U_λ` and `rank W = |λ|`.
pub fn in_sigma_lambda(w: &Lattice, lam: &HomomorphismData) -> bool {
    in_u_lambda(w, lam) && rank(w) == lam.r()
}

/// `φ(s, x) = W_{P(z^r u), P(z^{−r} v)}` with `P = A·E`, `E = [[1, z e(z)], [0, 1]]`.
pub fn phi(s: &StratumData, x: &FiberVector) -> Result<Lattice> {
    let r = s.r();
    if x.0.len() != 2 * r - 1 {
        return Err(Error::DimensionMismatch(format!("fiber must have {} coefficients, got {}", 2 * r - 1, x.0.len())));
    }
    let ri = r as i64;
    let a = s.matrix();
    let e = LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::one(), LaurentPoly::from_coeffs(&x.0).shift(1)],
        vec![LaurentPoly::zero(), LaurentPoly::one()],
    ])?;
    let p = a.mul(&e)?;
    let g1 = p.apply(&VectorLaurent::new(vec![LaurentPoly::z(ri), LaurentPoly::zero()]))?;
    let g2 = p.apply(&VectorLaurent::new(vec![LaurentPoly::zero(), LaurentPoly::z(-ri)]))?;
    let (u, v) = uv(s.lambda());
    let gens = [g1, g2].map(|g| from_uv(&g.components[0], &g.components[1], &u, &v));
    bounded_lattice(gens, r)
}

/// Reads `(a, b, c, d)` and `e` back from a lattice in `U_λ`.
pub fn phi_inverse(w: &Lattice, lam: &HomomorphismData) -> Result<(StratumData, FiberVector)> {
    let r = lam.r();
    if r == 0 {
        return Err(Error::Domain("φ is defined for r > 0".into()));
    }
    let big_r = working_window(w, lam);
    let (wide, m) = projection_matrix(w, lam, big_r)?;
    let n = 2 * big_r;
    if linalg::rank(&m, n) != n {
        return Err(Error::Domain("projection to 𝒦_λ is not invertible".into()));
    }
    let (u, v) = uv(lam);
    let ri = r as i64;
    let br = big_r as i64;
    // preimages of z^r u and z^{−r} v under the projection
    let transpose: Vec<Row> = (0..n).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
    let preimage = |target: VectorLaurent| -> Result<VectorLaurent> {
        let t = to_row(&target, big_r)?;
        let coords = projection_coords(&t, big_r, ri, br, &u, &v);
        let c = linalg::solve(&transpose, &coords, n).expect("nonsingular projection");
        Ok(to_vector(&linalg::combine(&c, wide.basis_rows(), 4 * big_r), big_r))
    };
    let xu = preimage(VectorLaurent::monomial(ri, &u))?;
    let xv = preimage(VectorLaurent::monomial(-ri, &v))?;

    let (uu, uc) = (coord(&xu, &u), coord(&xu, &v));
    let (vu, vc) = (coord(&xv, &u), coord(&xv, &v));
    // u-coordinate of x_v in [1−r, r−1] equals that of z^{1−2r} e(z) · x_u
    let series = uu.shift(-ri); // 1 + z⁻¹a(z⁻¹)
    let mut ecoef = vec![GaussianRational::zero(); 2 * r - 1];
    for m_exp in (1 - ri..ri).rev() {
        let j = (m_exp - (1 - ri)) as usize;
        let mut acc = vu.coeff(m_exp);
        for (jj, ej) in ecoef.iter().enumerate().skip(j + 1) {
            let k = m_exp - (1 - ri + jj as i64);
            acc -= &(ej * &series.coeff(k));
        }
        ecoef[j] = acc;
    }
    let ez = LaurentPoly::from_coeffs(&ecoef).shift(1 - 2 * ri);
    let vu_s = &vu - &(&ez * &uu);
    let vc_s = &vc - &(&ez * &uc);

    let shape = |p: &LaurentPoly, top: i64, lead_one: bool| -> Result<Vec<GaussianRational>> {
        if p.hi().is_some_and(|h| h > top) || (lead_one && p.coeff(top) != GaussianRational::one()) {
            return Err(Error::InvariantViolation(format!("coordinate {p} does not have the stratum shape")));
        }
        let start = if lead_one { top - 1 } else { top };
        let lo = p.lo().unwrap_or(start);
        Ok(trim((0..=(start - lo).max(-1)).map(|k| p.coeff(start - k as i64)).collect()))
    };
    let a = shape(&uu, ri, true)?;
    let c = shape(&uc, -ri - 1, false)?;
    let b = shape(&vu_s, -ri, false)?;
    let d = shape(&vc_s, -ri, true)?;
    let s = StratumData::new(lam.clone(), a, b, c, d)?;
    let x = FiberVector(ecoef);
    if !phi(&s, &x)?.same_subspace(w) {
        return Err(Error::InvariantViolation("φ of the recovered data does not reproduce the lattice".into()));
    }
    Ok((s, x))
}

/// `H_t` on `Σ_λ`, for exact `t ∈ [0, 1]`: `H₁ = id`, `H₀ = s_r ∘ π`.
///
/// The data are first re-read against the homomorphism of `π(W)`, so that the
/// `z^{−r}` coefficient of `b` vanishes; otherwise `H₀` would be `s_r` of the
/// line of `v_λ` rather than of `π(W)`.
pub fn homotopy_h(s: &StratumData, t: &BigRational) -> Result<Lattice> {
    if t.is_negative() || *t > BigRational::one() {
        return Err(Error::OutOfRange(format!("t = {t} is not in [0, 1]")));
    }
    let r = s.r();
    let w = phi(s, &FiberVector::zero(r))?;
    let lam = HomomorphismData::from_line(r, &pi(&w)?);
    let (s, _) = phi_inverse(&w, &lam)?;
    phi(&s.rescaled(t), &FiberVector::zero(r))
}
