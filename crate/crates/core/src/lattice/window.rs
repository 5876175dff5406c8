//! The finite window `z^{−r}𝒦₊ / z^r𝒦₊`.
//!
//! Coordinates are indexed by slots `(exponent, component)` with exponents in
//! `[−r, r − 1]`, ordered exponent-major: `slot = 2(e + r) + c`. A window row is
//! an honest element of `𝒦` with exponents below `r`; the lattice it stands
//! for is its span plus `z^r𝒦₊`.

use crate::arith::linalg::{self, Row};
use crate::arith::{GaussianRational, LaurentPoly, VectorLaurent};
use crate::error::{Error, Result};

pub fn slots(r: usize) -> usize {
    4 * r
}

pub fn slot(r: usize, exp: i64, comp: usize) -> usize {
    (exp + r as i64) as usize * 2 + comp
}

pub fn slot_exp(r: usize, s: usize) -> i64 {
    (s / 2) as i64 - r as i64
}

/// Window coordinates of `v`; terms at exponents `≥ r` are dropped, terms below
/// `−r` are an error.
pub fn to_row(v: &VectorLaurent, r: usize) -> Result<Row> {
    if v.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a vector in 𝒦 = ℋ⊗ℂ², got {} components", v.dim())));
    }
    let mut row = vec![GaussianRational::zero(); slots(r)];
    for (c, p) in v.components.iter().enumerate() {
        for (e, x) in p.terms() {
            if e < -(r as i64) {
                return Err(Error::OutsideWindow { r, exp: e });
            }
            if e < r as i64 {
                row[slot(r, e, c)] = x.clone();
            }
        }
    }
    Ok(row)
}

pub fn to_vector(row: &[GaussianRational], r: usize) -> VectorLaurent {
    let mut comps = vec![LaurentPoly::zero(), LaurentPoly::zero()];
    for (s, x) in row.iter().enumerate() {
        comps[s % 2].add_term(slot_exp(r, s), x);
    }
    VectorLaurent::new(comps)
}

/// Multiplication by `z`, truncated at exponent `r`.
pub fn shift_row(row: &[GaussianRational]) -> Row {
    let n = row.len();
    let mut out = vec![GaussianRational::zero(); n];
    if n >= 2 {
        out[2..].clone_from_slice(&row[..n - 2]);
    }
    out
}

/// The `ℂ²` coefficient at exponent `e`.
pub fn slot_pair(row: &[GaussianRational], r: usize, e: i64) -> [GaussianRational; 2] {
    [row[slot(r, e, 0)].clone(), row[slot(r, e, 1)].clone()]
}

/// Re-index a row from window `r` into window `r2 ≥ r`.
pub fn widen_row(row: &[GaussianRational], r: usize, r2: usize) -> Row {
    let mut out = vec![GaussianRational::zero(); slots(r2)];
    let off = 2 * (r2 - r);
    out[off..off + row.len()].clone_from_slice(row);
    out
}

/// A subspace of the window kept in reduced row echelon form, so two spans are
/// equal exactly when their fields are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Span {
    pub(crate) r: usize,
    pub(crate) basis: Vec<Row>,
    pub(crate) pivots: Vec<usize>,
}

impl Span {
    pub fn from_rows(r: usize, rows: Vec<Row>) -> Span {
        let (basis, pivots) = linalg::rref(rows, slots(r));
        Span { r, basis, pivots }
    }

    /// The `ℂ[z]`-module generated by `rows`, i.e. the span of `z^k·rows`.
    pub fn z_closure(r: usize, rows: Vec<Row>) -> Span {
        let mut all = Vec::with_capacity(rows.len() * 2 * r.max(1));
        for row in rows {
            let mut cur = row;
            for _ in 0..2 * r {
                if cur.iter().all(GaussianRational::is_zero) {
                    break;
                }
                let next = shift_row(&cur);
                all.push(cur);
                cur = next;
            }
        }
        Span::from_rows(r, all)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        linalg::in_rref_span(&self.basis, &self.pivots, v)
    }

    pub fn is_z_stable(&self) -> bool {
        self.basis.iter().all(|b| self.contains(&shift_row(b)))
    }

    pub fn vectors(&self) -> Vec<VectorLaurent> {
        self.basis.iter().map(|b| to_vector(b, self.r)).collect()
    }

    /// Elements of the span whose coordinates vanish on every slot outside
    /// `keep`, as an echelon basis.
    pub fn restricted_to(&self, keep: impl Fn(usize) -> bool) -> Vec<Row> {
        let n = slots(self.r);
        let m = self.basis.len();
        let eqs: Vec<Row> =
            (0..n).filter(|&s| !keep(s)).map(|s| (0..m).map(|i| self.basis[i][s].clone()).collect()).collect();
        let coeffs = linalg::nullspace(&eqs, m);
        let rows = coeffs.iter().map(|c| linalg::combine(c, &self.basis, n)).collect();
        linalg::rref(rows, n).0
    }

    /// Rank of the orthogonal projection onto the exponents `≥ 0`.
    pub fn nonnegative_rank(&self) -> usize {
        let half = 2 * self.r;
        let rows: Vec<Row> = self.basis.iter().map(|b| b[half..].to_vec()).collect();
        linalg::rank(&rows, half)
    }

    pub fn widen(&self, r2: usize) -> Span {
        assert!(r2 >= self.r);
        let mut rows: Vec<Row> = self.basis.iter().map(|b| widen_row(b, self.r, r2)).collect();
        for e in self.r as i64..r2 as i64 {
            for c in 0..2 {
                let mut unit = vec![GaussianRational::zero(); slots(r2)];
                unit[slot(r2, e, c)] = GaussianRational::one();
                rows.push(unit);
            }
        }
        Span::from_rows(r2, rows)
    }

    /// Drop to window `r2 ≤ r`; fails if some element reaches below `−r2`.
    pub fn narrow(&self, r2: usize) -> Result<Span> {
        assert!(r2 <= self.r);
        let off = 2 * (self.r - r2);
        let mut rows = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            if let Some(s) = b[..off].iter().position(|x| !x.is_zero()) {
                return Err(Error::OutsideWindow { r: r2, exp: slot_exp(self.r, s) });
            }
            rows.push(b[off..off + slots(r2)].to_vec());
        }
        Ok(Span::from_rows(r2, rows))
    }

    /// Whether `z^s 𝒦₊ ⊂ W ⊂ z^{−s} 𝒦₊`.
    pub fn sandwiched(&self, s: usize) -> bool {
        let r = self.r as i64;
        let s = s as i64;
        if s >= r {
            return true;
        }
        let below = (0..slots(self.r)).filter(|&k| slot_exp(self.r, k) < -s).collect::<Vec<_>>();
        if self.basis.iter().any(|b| below.iter().any(|&k| !b[k].is_zero())) {
            return false;
        }
        (s..r).all(|e| {
            (0..2).all(|c| {
                let mut unit = vec![GaussianRational::zero(); slots(self.r)];
                unit[slot(self.r, e, c)] = GaussianRational::one();
                self.contains(&unit)
            })
        })
    }

    pub fn act(&self, g: &crate::loops::ConstantUnitary) -> Span {
        let rows = self
            .basis
            .iter()
            .map(|b| {
                let mut out = b.clone();
                for e in 0..2 * self.r {
                    let v = g.apply(&b[2 * e..2 * e + 2]);
                    out[2 * e..2 * e + 2].clone_from_slice(&v);
                }
                out
            })
            .collect();
        Span::from_rows(self.r, rows)
    }
}
