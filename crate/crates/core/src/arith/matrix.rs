//! Square matrices and vectors over Laurent polynomials, plus constant
//! Gaussian-rational matrices.

use std::fmt;

use crate::error::Error;

use super::{GaussianRational, LaurentPoly};

/// Square `n × n` matrix of Laurent polynomials, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix must have n ≥ 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        Ok(LaurentMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        LaurentMatrix::diag((0..n).map(|_| LaurentPoly::one()).collect())
    }

    pub fn zero(n: usize) -> Self {
        LaurentMatrix { n, entries: vec![LaurentPoly::zero(); n * n] }
    }

    pub fn diag(d: Vec<LaurentPoly>) -> Self {
        let n = d.len();
        let mut m = LaurentMatrix::zero(n);
        for (i, p) in d.into_iter().enumerate() {
            m.entries[i * n + i] = p;
        }
        m
    }

    /// `diag(z^a, z^b)`.
    pub fn diag_monomials(a: i64, b: i64) -> Self {
        LaurentMatrix::diag(vec![LaurentPoly::z(a), LaurentPoly::z(b)])
    }

    pub fn from_scalar(m: &ScalarMatrix) -> Self {
        let n = m.n();
        LaurentMatrix { n, entries: m.entries.iter().cloned().map(LaurentPoly::constant).collect() }
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(cols: &[VectorLaurent]) -> Result<Self, Error> {
        let n = cols.len();
        if cols.iter().any(|c| c.dim() != n) {
            return Err(Error::NotSquare { rows: cols.first().map_or(0, |c| c.dim()), cols: n });
        }
        let mut m = LaurentMatrix::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.entries[i * n + j] = c.components[i].clone();
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> VectorLaurent {
        VectorLaurent::new((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<VectorLaurent> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMatrix::identity(self.n)
    }

    /// Smallest and largest exponent over all entries; `None` for the zero matrix.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.entries.iter().filter_map(|p| p.lo()).min()?;
        let hi = self.entries.iter().filter_map(|p| p.hi()).max()?;
        Some((lo, hi))
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix, Error> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!("{}×{} · {}×{}", self.n, self.n, rhs.n, rhs.n)));
        }
        let n = self.n;
        let mut out = LaurentMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix, Error> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, rhs.n)));
        }
        Ok(LaurentMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn apply(&self, v: &VectorLaurent) -> Result<VectorLaurent, Error> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch(format!("{}×{} applied to length {}", self.n, self.n, v.dim())));
        }
        Ok(VectorLaurent::new(
            (0..self.n)
                .map(|i| {
                    (0..self.n).fold(LaurentPoly::zero(), |acc, k| &acc + &(self.get(i, k) * &v.components[k]))
                })
                .collect(),
        ))
    }

    /// Conjugate transpose with `z ↦ z⁻¹`: the pointwise adjoint on the circle.
    pub fn star(&self) -> LaurentMatrix {
        let n = self.n;
        let mut out = LaurentMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).star();
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> LaurentMatrix {
        LaurentMatrix { n: self.n, entries: self.entries.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn shift(&self, k: i64) -> LaurentMatrix {
        LaurentMatrix { n: self.n, entries: self.entries.iter().map(|p| p.shift(k)).collect() }
    }

    /// Determinant by cofactor expansion (n is tiny throughout).
    pub fn det(&self) -> LaurentPoly {
        fn rec(m: &LaurentMatrix, rows: &[usize], cols: &[usize]) -> LaurentPoly {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            if rows.len() == 2 {
                let a = m.get(rows[0], cols[0]) * m.get(rows[1], cols[1]);
                let b = m.get(rows[0], cols[1]) * m.get(rows[1], cols[0]);
                return &a - &b;
            }
            let mut acc = LaurentPoly::zero();
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = e * &rec(m, &rows[1..], &rest);
                acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        rec(self, &idx, &idx)
    }

    /// Adjugate of a 2×2 matrix.
    pub fn adjugate2(&self) -> Result<LaurentMatrix, Error> {
        if self.n != 2 {
            return Err(Error::DimensionMismatch(format!("adjugate2 on {}×{}", self.n, self.n)));
        }
        LaurentMatrix::from_rows(vec![
            vec![self.get(1, 1).clone(), -self.get(0, 1)],
            vec![-self.get(1, 0), self.get(0, 0).clone()],
        ])
    }

    pub fn eval(&self, z: &GaussianRational) -> Option<ScalarMatrix> {
        let entries = self.entries.iter().map(|p| p.eval(z)).collect::<Option<Vec<_>>>()?;
        Some(ScalarMatrix { n: self.n, entries })
    }

    /// `z ↦ t·z` entrywise.
    pub fn substitute_scaled(&self, t: &GaussianRational) -> LaurentMatrix {
        LaurentMatrix { n: self.n, entries: self.entries.iter().map(|p| p.substitute_scaled(t)).collect() }
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// An element of `𝒦 = ℋ ⊗ ℂⁿ` with finite support.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorLaurent {
    pub components: Vec<LaurentPoly>,
}

impl VectorLaurent {
    pub fn new(components: Vec<LaurentPoly>) -> Self {
        VectorLaurent { components }
    }

    pub fn zero(n: usize) -> Self {
        VectorLaurent::new(vec![LaurentPoly::zero(); n])
    }

    /// `z^exp · c` for a constant vector `c`.
    pub fn monomial(exp: i64, c: &[GaussianRational]) -> Self {
        VectorLaurent::new(c.iter().map(|x| LaurentPoly::monomial(exp, x.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LaurentPoly::is_zero)
    }

    /// Largest exponent carrying a nonzero coefficient; `None` stands for −∞
    /// (the zero vector).
    pub fn degree(&self) -> Option<i64> {
        self.components.iter().filter_map(LaurentPoly::hi).max()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.components.iter().filter_map(LaurentPoly::lo).min()
    }

    /// The `ℂⁿ` coefficient of `z^exp`.
    pub fn coeff(&self, exp: i64) -> Vec<GaussianRational> {
        self.components.iter().map(|p| p.coeff(exp)).collect()
    }

    pub fn shift(&self, k: i64) -> Self {
        VectorLaurent::new(self.components.iter().map(|p| p.shift(k)).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        VectorLaurent::new(self.components.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        VectorLaurent::new(self.components.iter().map(|c| c * p).collect())
    }

    pub fn add(&self, rhs: &VectorLaurent) -> Self {
        VectorLaurent::new(self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &VectorLaurent) -> Self {
        VectorLaurent::new(self.components.iter().zip(&rhs.components).map(|(a, b)| a - b).collect())
    }

    /// `L²` inner product `⟨self, rhs⟩ = Σ_k Σ_i a_{k,i} conj(b_{k,i})`.
    pub fn inner(&self, rhs: &VectorLaurent) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (a, b) in self.components.iter().zip(&rhs.components) {
            for (e, c) in a.terms() {
                if let Some(d) = b.coeff_ref(e) {
                    acc += &(c * &d.conj());
                }
            }
        }
        acc
    }

    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        VectorLaurent::new(self.components.iter().map(|p| p.truncate(lo, hi)).collect())
    }
}

/// Dot product `Σ a_i conj(b_i)` on `ℚ(i)ⁿ`.
pub fn hermitian_dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter().zip(b).fold(GaussianRational::zero(), |acc, (x, y)| acc + x * &y.conj())
}

/// Constant `n × n` Gaussian-rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl ScalarMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix must have n ≥ 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        Ok(ScalarMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![GaussianRational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = GaussianRational::one();
        }
        ScalarMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((0..n).fold(GaussianRational::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j)));
            }
        }
        ScalarMatrix { n, entries }
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        (0..self.n)
            .map(|i| (0..self.n).fold(GaussianRational::zero(), |acc, k| acc + self.get(i, k) * &v[k]))
            .collect()
    }

    pub fn conj_transpose(&self) -> ScalarMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).conj());
            }
        }
        ScalarMatrix { n, entries }
    }

    pub fn det(&self) -> GaussianRational {
        LaurentMatrix::from_scalar(self).det().coeff(0)
    }

    pub fn is_identity(&self) -> bool {
        *self == ScalarMatrix::identity(self.n)
    }

    pub fn inverse(&self) -> Option<ScalarMatrix> {
        let n = self.n;
        let mut rows: Vec<Vec<GaussianRational>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let inv = rows[col][col].inv()?;
            rows[col] = rows[col].iter().map(|x| x * &inv).collect();
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pivot_row = rows[col].clone();
                    for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= &(&f * p);
                    }
                }
            }
        }
        Some(ScalarMatrix { n, entries: rows.into_iter().flat_map(|r| r[n..].to_vec()).collect() })
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: i64) -> LaurentPoly {
        LaurentPoly::z(e)
    }

    #[test]
    fn inverse_pair_multiplies_to_identity() {
        let a = LaurentMatrix::diag_monomials(1, -1);
        let b = LaurentMatrix::diag_monomials(-1, 1);
        assert!(a.mul(&b).unwrap().is_identity());
    }

    #[test]
    fn identity_is_neutral_and_monomials_compose() {
        let m = LaurentMatrix::from_rows(vec![vec![z(2), z(-1)], vec![LaurentPoly::zero(), z(0)]]).unwrap();
        assert_eq!(LaurentMatrix::identity(2).mul(&m).unwrap(), m);
        let d = LaurentMatrix::diag_monomials(1, 0);
        assert_eq!(d.mul(&d).unwrap(), LaurentMatrix::diag_monomials(2, 0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = LaurentMatrix::identity(2);
        let b = LaurentMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            LaurentMatrix::from_rows(vec![vec![z(0), z(0)], vec![z(0)]]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn star_examples() {
        let d = LaurentMatrix::diag_monomials(1, -1);
        assert_eq!(d.star(), LaurentMatrix::diag_monomials(-1, 1));
        assert_eq!(d.star().star(), d);
    }

    #[test]
    fn determinant_examples() {
        assert!(LaurentMatrix::diag_monomials(1, -1).det().is_one());
        assert_eq!(LaurentMatrix::diag_monomials(1, 0).det(), z(1));
        let a0 = GaussianRational::from_ints(3, -2);
        let tri = LaurentMatrix::from_rows(vec![
            vec![z(1), LaurentPoly::constant(a0)],
            vec![LaurentPoly::zero(), z(-1)],
        ])
        .unwrap();
        assert!(tri.det().is_one());
        let three = LaurentMatrix::diag(vec![z(1), z(2), z(-4)]);
        assert_eq!(three.det(), z(-1));
    }

    #[test]
    fn vector_degree() {
        let a0 = GaussianRational::from_ints(2, 1);
        let v = VectorLaurent::new(vec![LaurentPoly::zero(), z(-1)]);
        assert_eq!(v.degree(), Some(-1));
        let w = VectorLaurent::new(vec![LaurentPoly::constant(a0), z(-1)]);
        assert_eq!(w.degree(), Some(0));
        assert_eq!(VectorLaurent::zero(2).degree(), None);
    }

    #[test]
    fn scalar_inverse() {
        let g = ScalarMatrix::from_rows(vec![
            vec![GaussianRational::from_fracs(3, 5, 0, 1), GaussianRational::from_fracs(4, 5, 0, 1)],
            vec![GaussianRational::from_fracs(-4, 5, 0, 1), GaussianRational::from_fracs(3, 5, 0, 1)],
        ])
        .unwrap();
        assert_eq!(g.inverse().unwrap(), g.conj_transpose());
        assert!(g.mul(&g.inverse().unwrap()).is_identity());
    }
}
