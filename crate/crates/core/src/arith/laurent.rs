//! Laurent polynomials in `z` with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::GaussianRational;

/// Finite sum `Σ c_k z^k`, `k ∈ ℤ`. Zero coefficients are never stored, so the
/// first and last keys of the term map are the support bounds.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `z^exp` with coefficient one.
    pub fn z(exp: i64) -> Self {
        LaurentPoly::monomial(exp, GaussianRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    /// Polynomial from ascending coefficients `c_0 + c_1 z + …`.
    pub fn from_coeffs(coeffs: &[GaussianRational]) -> Self {
        LaurentPoly::from_terms(coeffs.iter().cloned().enumerate().map(|(k, c)| (k as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of `z^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, exp: i64) -> Option<&GaussianRational> {
        self.terms.get(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lo(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn hi(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_polynomial(&self) -> bool {
        self.lo().map_or(true, |lo| lo >= 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    /// Conjugates every coefficient, keeping exponents.
    pub fn conj_coeffs(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, c.conj())).collect() }
    }

    /// `z ↦ z⁻¹` together with coefficient conjugation; equals the pointwise
    /// complex conjugate on the unit circle.
    pub fn star(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.conj())).collect() }
    }

    /// `z ↦ z⁻¹` without conjugation.
    pub fn reflect(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// `z ↦ t·z` for a scalar `t` (coefficient of `z^k` multiplied by `t^k`).
    pub fn substitute_scaled(&self, t: &GaussianRational) -> Self {
        let tinv = t.inv();
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, c)| {
            let f = if e >= 0 {
                t.pow(e as u32)
            } else {
                tinv.as_ref().expect("negative exponent with t = 0").pow((-e) as u32)
            };
            (e, c * &f)
        }))
    }

    /// Evaluation at a point; `None` if the point is zero and a negative power occurs.
    pub fn eval(&self, z: &GaussianRational) -> Option<GaussianRational> {
        // Horner separately on the nonnegative and negative parts
        let horner = |terms: &mut dyn Iterator<Item = (i64, &GaussianRational)>, x: &GaussianRational| {
            let mut acc = GaussianRational::zero();
            let mut prev: Option<i64> = None;
            for (e, c) in terms {
                if let Some(p) = prev {
                    acc = &acc * &x.pow((p - e) as u32);
                }
                acc += c;
                prev = Some(e);
            }
            (acc, prev.unwrap_or(0))
        };
        let (pos, low) = horner(&mut self.terms.range(0..).rev().map(|(&e, c)| (e, c)), z);
        let mut total = &pos * &z.pow(low as u32);
        if self.lo().is_some_and(|lo| lo < 0) {
            let zinv = z.inv()?;
            let (neg, high) = horner(&mut self.terms.range(..0).map(|(&e, c)| (-e, c)), &zinv);
            total += &(&neg * &zinv.pow(high as u32));
        }
        Some(total)
    }

    /// Keeps only the terms with `lo ≤ exp < hi`.
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        LaurentPoly { terms: self.terms.range(lo..hi).map(|(&e, c)| (e, c.clone())).collect() }
    }

    /// Sum over the circle of `|c_k|²`, the squared `L²` norm.
    pub fn norm_sq(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c.norm_sq())
    }

    /// Ascending coefficients of a true polynomial (panics on negative support).
    pub fn poly_coeffs(&self) -> Vec<GaussianRational> {
        assert!(self.is_polynomial(), "poly_coeffs on a Laurent polynomial with negative support");
        match self.hi() {
            None => Vec::new(),
            Some(hi) => (0..=hi).map(|e| self.coeff(e)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.is_real() || c.re().is_zero() { c.to_string() } else { format!("({c})") };
            match e {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}·z")?,
                _ => write!(f, "{coeff}·z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
