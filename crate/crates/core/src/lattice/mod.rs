//! Bounded `z`-stable lattices `z^r𝒦₊ ⊂ W ⊂ z^{−r}𝒦₊` of index zero, the map
//! `α: f ↦ f·𝒦₊`, and the invariants read off from `W`: index, rank, kernel
//! basis, `π`, `λ_W`, filtration level and Thom coordinates.

mod operator;
mod projective;
mod thom;
pub mod window;

pub use operator::{truncated_operator, TruncatedOperator};
pub use projective::{HomomorphismData, ProjectivePoint};
pub use thom::{lattice_from_thom, thom_coords, ThomPoint};

use crate::arith::linalg::Row;
use crate::arith::{GaussianRational, LaurentMatrix, VectorLaurent};
use crate::error::{Error, Result};
use crate::loops::{ConstantUnitary, UnitaryLoop};
use window::{slot_exp, slots, to_row, to_vector, Span};

/// A validated lattice: `z`-stable, index zero (window dimension `2r`), held
/// by the echelon basis of `W / z^r𝒦₊`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    span: Span,
}

/// A `z`-stable window subspace of any dimension, for diagnosing loops outside
/// the index-zero component.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RawSpan {
    span: Span,
}

impl Lattice {
    fn validate(span: Span) -> Result<Lattice> {
        if !span.is_z_stable() {
            return Err(Error::NotZStable);
        }
        let expected = 2 * span.r;
        if span.dim() != expected {
            return Err(Error::IndexNonzero { dim: span.dim(), expected });
        }
        Ok(Lattice { span })
    }

    /// `𝒦₊` itself, at window `r`.
    pub fn k_plus(r: usize) -> Lattice {
        Lattice { span: Span::from_rows(0, Vec::new()).widen(r) }
    }

    /// The lattice whose window part is spanned by `rows` (which must already
    /// be `z`-stable).
    pub fn from_rows(r: usize, rows: Vec<Row>) -> Result<Lattice> {
        if rows.iter().any(|row| row.len() != slots(r)) {
            return Err(Error::DimensionMismatch(format!("window rows must have {} slots", slots(r))));
        }
        Lattice::validate(Span::from_rows(r, rows))
    }

    /// `ℂ[z]·gens + z^r𝒦₊`.
    pub fn from_generators(r: usize, gens: &[VectorLaurent]) -> Result<Lattice> {
        let rows = gens.iter().map(|g| to_row(g, r)).collect::<Result<Vec<_>>>()?;
        Lattice::validate(Span::z_closure(r, rows))
    }

    pub fn r(&self) -> usize {
        self.span.r
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn basis_rows(&self) -> &[Row] {
        self.span.basis()
    }

    pub fn basis_vectors(&self) -> Vec<VectorLaurent> {
        self.span.vectors()
    }

    pub fn contains(&self, v: &VectorLaurent) -> bool {
        match to_row(v, self.r()) {
            Ok(row) => self.span.contains(&row),
            Err(_) => false,
        }
    }

    /// The same subspace seen through window `r2`. Narrowing fails unless the
    /// lattice already sits inside `z^{−r2}𝒦₊`.
    pub fn with_window(&self, r2: usize) -> Result<Lattice> {
        let span = if r2 >= self.r() { self.span.widen(r2) } else { self.span.narrow(r2)? };
        Lattice::validate(span)
    }

    /// Structural comparison after bringing both to a common window.
    pub fn same_subspace(&self, other: &Lattice) -> bool {
        let r = self.r().max(other.r());
        self.span.widen(r) == other.span.widen(r)
    }
}

impl RawSpan {
    pub fn from_generators(r: usize, gens: &[VectorLaurent]) -> Result<RawSpan> {
        let rows = gens.iter().map(|g| to_row(g, r)).collect::<Result<Vec<_>>>()?;
        Ok(RawSpan { span: Span::z_closure(r, rows) })
    }

    pub fn r(&self) -> usize {
        self.span.r
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn into_lattice(self) -> Result<Lattice> {
        Lattice::validate(self.span)
    }
}

fn require_support(m: &LaurentMatrix, r: usize) -> Result<()> {
    if let Some((lo, hi)) = m.support() {
        let bad = if lo < -(r as i64) { Some(lo) } else if hi > r as i64 { Some(hi) } else { None };
        if let Some(exp) = bad {
            return Err(Error::OutsideWindow { r, exp });
        }
    }
    Ok(())
}

/// `W_f = f·𝒦₊`, windowed at `r`.
pub fn alpha(f: &UnitaryLoop, r: usize) -> Result<Lattice> {
    require_support(f.matrix(), r)?;
    Lattice::from_generators(r, &f.matrix().columns())
}

/// `f·𝒦₊` for any Laurent matrix with support in `[−r, r]`, without the
/// index-zero requirement.
pub fn raw_alpha(m: &LaurentMatrix, r: usize) -> Result<RawSpan> {
    require_support(m, r)?;
    RawSpan::from_generators(r, &m.columns())
}

/// Kernel and cokernel dimensions of the projection `W → 𝒦₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexData {
    pub kernel: usize,
    pub cokernel: usize,
}

impl IndexData {
    pub fn index(&self) -> i64 {
        self.kernel as i64 - self.cokernel as i64
    }
}

fn index_data(span: &Span) -> IndexData {
    let p = span.nonnegative_rank();
    IndexData { kernel: span.dim() - p, cokernel: 2 * span.r - p }
}

pub fn index_of_lattice(w: &Lattice) -> i64 {
    index_data(&w.span).index()
}

pub fn index_of_span(w: &RawSpan) -> IndexData {
    index_data(&w.span)
}

/// `dim W ∩ 𝒦₋`.
pub fn rank(w: &Lattice) -> usize {
    index_data(&w.span).kernel
}

/// Largest `d` such that `W` has a nonzero element with all exponents `≤ −d`
/// (zero if none); equals `rank` for lattices coming from loops.
pub fn rank_by_min_degree(w: &Lattice) -> usize {
    let r = w.r();
    (1..=r)
        .rev()
        .find(|&d| !w.span.restricted_to(|s| slot_exp(r, s) <= -(d as i64)).is_empty())
        .unwrap_or(0)
}

fn min_degree_element(w: &Lattice) -> Result<(usize, Row)> {
    let k = rank(w);
    if k == 0 {
        return Err(Error::Domain("lattice has rank 0".into()));
    }
    let r = w.r();
    let xs = w.span.restricted_to(|s| slot_exp(r, s) <= -(k as i64));
    if xs.len() != 1 {
        return Err(Error::InvariantViolation(format!(
            "expected a unique line of elements of degree ≤ -{k}, found dimension {}",
            xs.len()
        )));
    }
    Ok((k, xs.into_iter().next().unwrap()))
}

/// `{x, zx, …, z^{rank−1}x}` with `x` of minimal degree `−rank`.
pub fn kernel_basis(w: &Lattice) -> Result<Vec<VectorLaurent>> {
    let (k, x) = min_degree_element(w)?;
    let r = w.r();
    let mut rows = vec![x];
    for _ in 1..k {
        rows.push(window::shift_row(rows.last().unwrap()));
    }
    let kernel = w.span.restricted_to(|s| slot_exp(r, s) < 0);
    let ours = Span::from_rows(r, rows.clone());
    if ours.dim() != k || Span::from_rows(r, kernel) != ours {
        return Err(Error::InvariantViolation("z^j·x does not span W ∩ 𝒦₋".into()));
    }
    Ok(rows.iter().map(|row| to_vector(row, r)).collect())
}

/// The line of `z^{−1}`-coefficients of degree `−1` elements of `W`.
pub fn pi(w: &Lattice) -> Result<ProjectivePoint> {
    let (k, x) = min_degree_element(w)?;
    let [a, b] = window::slot_pair(&x, w.r(), -(k as i64));
    ProjectivePoint::new(vec![a, b])
}

pub fn lambda_of(w: &Lattice) -> Result<HomomorphismData> {
    match rank(w) {
        0 => Ok(HomomorphismData::trivial()),
        k => Ok(HomomorphismData::from_line(k, &pi(w)?)),
    }
}

/// Minimal `s` with `z^s𝒦₊ ⊂ W ⊂ z^{−s}𝒦₊`.
pub fn filtration_level(w: &Lattice) -> usize {
    (0..=w.r()).find(|&s| w.span.sandwiched(s)).unwrap()
}

/// `g·W`.
pub fn act(g: &ConstantUnitary, w: &Lattice) -> Lattice {
    Lattice { span: w.span.act(g) }
}

/// `W_{ze₁, a₀e₁ + z⁻¹e₂}`: level 1, rank 0 (the example separating the two).
pub fn level_one_rank_zero(a0: GaussianRational) -> Lattice {
    use crate::arith::LaurentPoly;
    let g1 = VectorLaurent::new(vec![LaurentPoly::z(1), LaurentPoly::zero()]);
    let g2 = VectorLaurent::new(vec![LaurentPoly::constant(a0), LaurentPoly::z(-1)]);
    Lattice::from_generators(1, &[g1, g2]).expect("index-zero lattice")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPoly;
    use crate::loops::{conjugate_action, diag_u2, lambda_r, ConstantUnitary};

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_fracs(n, d, 0, 1)
    }

    fn g345() -> ConstantUnitary {
        ConstantUnitary::rotation(q(3, 5), q(4, 5)).unwrap()
    }

    fn e(exp: i64, a: GaussianRational, b: GaussianRational) -> VectorLaurent {
        VectorLaurent::monomial(exp, &[a, b])
    }

    #[test]
    fn alpha_examples() {
        let id = crate::loops::check_poly_loop(&LaurentMatrix::identity(2), 0, crate::loops::GroupTag::SU2).unwrap();
        let k = alpha(&id, 0).unwrap();
        assert!(k.basis_rows().is_empty());
        assert_eq!(k, Lattice::k_plus(0));

        let w = alpha(&lambda_r(1), 1).unwrap();
        let want = Lattice::from_generators(1, &[e(-1, q(0, 1), q(1, 1)), e(0, q(0, 1), q(1, 1))]).unwrap();
        assert_eq!(w, want);

        let f = conjugate_action(&g345(), &lambda_r(1)).unwrap();
        let w = alpha(&f, 1).unwrap();
        let want = Lattice::from_generators(1, &[e(-1, q(4, 5), q(3, 5)), e(0, q(4, 5), q(3, 5))]).unwrap();
        assert_eq!(w, want);
    }

    #[test]
    fn index_rank_level() {
        let w1 = alpha(&lambda_r(1), 1).unwrap();
        assert_eq!(index_of_lattice(&w1), 0);
        assert_eq!(index_of_lattice(&Lattice::k_plus(2)), 0);
        let raw = raw_alpha(diag_u2(1).matrix(), 1).unwrap();
        assert_eq!(index_of_span(&raw), IndexData { kernel: 0, cokernel: 1 });

        for r in 0..4 {
            let w = alpha(&lambda_r(r), r).unwrap();
            assert_eq!(rank(&w), r);
            assert_eq!(rank_by_min_degree(&w), r);
            assert_eq!(filtration_level(&w), r);
        }
        let odd = level_one_rank_zero(q(2, 1));
        assert_eq!((rank(&odd), filtration_level(&odd)), (0, 1));
        assert_eq!(rank_by_min_degree(&odd), 0);
        assert_eq!(filtration_level(&Lattice::k_plus(3)), 0);
    }

    #[test]
    fn kernel_and_pi() {
        let w2 = alpha(&lambda_r(2), 2).unwrap();
        let kb = kernel_basis(&w2).unwrap();
        assert_eq!(kb, vec![e(-2, q(0, 1), q(1, 1)), e(-1, q(0, 1), q(1, 1))]);
        assert_eq!(pi(&w2).unwrap(), ProjectivePoint::e2());

        let f = conjugate_action(&g345(), &lambda_r(1)).unwrap();
        let w = alpha(&f, 1).unwrap();
        let kb = kernel_basis(&w).unwrap();
        assert_eq!(kb.len(), 1);
        assert_eq!(ProjectivePoint::new(kb[0].coeff(-1)).unwrap(), ProjectivePoint::new(vec![q(4, 5), q(3, 5)]).unwrap());
        assert_eq!(pi(&w).unwrap().coords(), &[q(1, 1), q(3, 4)]);
        assert!(pi(&Lattice::k_plus(1)).is_err());
    }

    #[test]
    fn lambda_data() {
        let l = lambda_of(&alpha(&lambda_r(1), 1).unwrap()).unwrap();
        assert_eq!(l.r(), 1);
        assert_eq!(l.line().unwrap(), ProjectivePoint::e2());
        assert_eq!(ProjectivePoint::new(l.u().unwrap().to_vec()).unwrap(), ProjectivePoint::e1());
        assert_eq!(lambda_of(&Lattice::k_plus(1)).unwrap(), HomomorphismData::trivial());
    }

    #[test]
    fn action_commutes_with_alpha() {
        let g = g345();
        let f = lambda_r(2);
        let lhs = act(&g, &alpha(&f, 2).unwrap());
        let rhs = alpha(&conjugate_action(&g, &f).unwrap(), 2).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(pi(&act(&g, &alpha(&lambda_r(1), 1).unwrap())).unwrap(), ProjectivePoint::e2().act(&g));
    }

    #[test]
    fn windows() {
        let w = alpha(&lambda_r(1), 1).unwrap();
        let wide = w.with_window(3).unwrap();
        assert_eq!(wide.with_window(1).unwrap(), w);
        assert!(wide.with_window(0).is_err());
        assert!(w.same_subspace(&wide));
        let v = VectorLaurent::new(vec![LaurentPoly::z(5), LaurentPoly::zero()]);
        assert!(w.contains(&v));
    }
}
