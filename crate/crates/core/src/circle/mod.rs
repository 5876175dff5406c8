//! Exact root location relative to the unit circle and winding numbers of
//! Laurent polynomials that do not vanish on it.
//!
//! Disk counts use the Schur–Cohn reduction `p ↦ conj(a₀)·p − a_n·p*`. When a
//! step is singular (`|a₀| = |a_n|`) the count falls back to the argument
//! principle along the Cayley parametrization `z = (1 + it)/(1 − it)`, where the
//! change of argument is a Cauchy index computed with Sturm sequences.

pub mod realpoly;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{GaussianRational, LaurentPoly};
use crate::error::{Error, Result};
use realpoly::{cauchy_index, count_distinct_real_roots, RealPoly};

/// Evidence that a polynomial vanishes somewhere on `|z| = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleCertificate {
    /// `p(−1) = 0`.
    pub at_minus_one: bool,
    /// Distinct real roots of `|p|²` pulled back along `t = tan(θ/2)`.
    pub real_roots: usize,
}

impl fmt::Display for CircleCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at_minus_one {
            write!(f, "p(-1) = 0")?;
            if self.real_roots > 0 {
                write!(f, ", ")?;
            }
        }
        if self.real_roots > 0 {
            write!(f, "{} root(s) with |z| = 1, z ≠ -1", self.real_roots)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindingResult {
    pub winding: i64,
    pub roots_inside: i64,
    pub pole_order_at_zero: i64,
}

/// Complex polynomial in `t`, ascending coefficients.
type CPoly = Vec<GaussianRational>;

fn cmul(a: &CPoly, b: &CPoly) -> CPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn cpow(a: &CPoly, e: usize) -> CPoly {
    (0..e).fold(vec![GaussianRational::one()], |acc, _| cmul(&acc, a))
}

fn split_re_im(p: &CPoly) -> (RealPoly, RealPoly) {
    (
        RealPoly::new(p.iter().map(|c| c.re().clone()).collect()),
        RealPoly::new(p.iter().map(|c| c.im().clone()).collect()),
    )
}

/// `Σ_k c_k (1 + it)^a(k) (1 − it)^b(k)` over the terms of `q`.
fn cayley_pullback(q: &LaurentPoly, exps: impl Fn(i64) -> (i64, i64)) -> CPoly {
    let plus: CPoly = vec![GaussianRational::one(), GaussianRational::i()];
    let minus: CPoly = vec![GaussianRational::one(), -GaussianRational::i()];
    let mut acc: CPoly = Vec::new();
    for (k, c) in q.terms() {
        let (a, b) = exps(k);
        let term = cmul(&cpow(&plus, a as usize), &cpow(&minus, b as usize));
        if acc.len() < term.len() {
            acc.resize(term.len(), GaussianRational::zero());
        }
        for (o, x) in acc.iter_mut().zip(&term) {
            *o += &(x * c);
        }
    }
    acc
}

fn require_polynomial(p: &LaurentPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match p.lo() {
        Some(lo) if lo < 0 => Err(Error::NotPolynomial(lo)),
        _ => Ok(()),
    }
}

/// `None` when `p` has no root on the unit circle, otherwise a certificate.
pub fn circle_certificate(p: &LaurentPoly) -> Result<Option<CircleCertificate>> {
    require_polynomial(p)?;
    let n = p.hi().unwrap();
    let at_minus_one = p.eval(&GaussianRational::from_ints(-1, 0)).unwrap().is_zero();
    // Q(z) = p(z)·conj(p)(1/z) is real on the circle; S(t) = (1+t²)^n Q(z(t)).
    let q = p * &p.star();
    let s = cayley_pullback(&q, |k| (n + k, n - k));
    debug_assert!(s.iter().all(GaussianRational::is_real));
    let s = RealPoly::new(s.iter().map(|c| c.re().clone()).collect());
    let real_roots = count_distinct_real_roots(&s);
    Ok((at_minus_one || real_roots > 0).then_some(CircleCertificate { at_minus_one, real_roots }))
}

pub fn has_root_on_unit_circle(p: &LaurentPoly) -> Result<bool> {
    Ok(circle_certificate(p)?.is_some())
}

fn require_no_circle_root(p: &LaurentPoly) -> Result<()> {
    match circle_certificate(p)? {
        Some(cert) => Err(Error::RootOnCircle(cert)),
        None => Ok(()),
    }
}

/// Roots in `|z| < 1` counted with multiplicity.
pub fn count_roots_in_open_unit_disk(p: &LaurentPoly) -> Result<usize> {
    require_no_circle_root(p)?;
    let coeffs = p.poly_coeffs();
    Ok(schur_cohn(coeffs).unwrap_or_else(|| argument_count(p)))
}

/// The same count by the argument principle alone; kept public as an
/// independent route for cross-checks.
pub fn count_roots_by_argument(p: &LaurentPoly) -> Result<usize> {
    require_no_circle_root(p)?;
    Ok(argument_count(p))
}

/// Schur–Cohn recursion; `None` on a singular step.
fn schur_cohn(mut a: Vec<GaussianRational>) -> Option<usize> {
    let zeros = a.iter().take_while(|c| c.is_zero()).count();
    a.drain(..zeros);
    let n = a.len() - 1;
    if n == 0 {
        return Some(zeros);
    }
    let a0 = a[0].clone();
    let an = a[n].clone();
    let gamma = a0.norm_sq() - an.norm_sq();
    if gamma.is_zero() {
        return None;
    }
    let a0c = a0.conj();
    // Tp = conj(a₀)·p − a_n·p*, p*_k = conj(a_{n−k}); degree drops by one.
    let inv = GaussianRational::real(gamma.clone()).inv().unwrap();
    let t: Vec<GaussianRational> =
        (0..n).map(|k| (&(&a0c * &a[k]) - &(&an * &a[n - k].conj())) * &inv).collect();
    let rest = schur_cohn(t)?;
    Some(zeros + if gamma.is_positive() { rest } else { n - rest })
}

/// Disk count as the winding of `p` around the circle, assuming no circle roots.
fn argument_count(p: &LaurentPoly) -> usize {
    let n = p.hi().unwrap();
    // P(t) = Σ a_k (1+it)^k (1−it)^(n−k) = (1 − it)^n p(z(t)).
    let big_p = cayley_pullback(p, |k| (k, n - k));
    let (re, im) = split_re_im(&big_p);
    let half_turns = if re.is_zero() || im.is_zero() {
        0
    } else {
        endpoint_half_turns(&im, &re) - cauchy_index(&im, &re)
    };
    // arg(1 − it)^n sweeps −nπ as t runs over ℝ.
    let twice = half_turns + n;
    debug_assert!(twice % 2 == 0 && twice >= 0, "non-integral winding");
    (twice / 2) as usize
}

/// `(atan(num/den)(+∞) − atan(num/den)(−∞)) / π`, in `{−1, 0, 1}`.
fn endpoint_half_turns(num: &RealPoly, den: &RealPoly) -> i64 {
    let (dn, dd) = (num.degree().unwrap(), den.degree().unwrap());
    if dn <= dd {
        return 0;
    }
    let s = num.sign_at_infinity(true) as i64 * den.sign_at_infinity(true) as i64;
    if (dn - dd) % 2 == 1 {
        s
    } else {
        0
    }
}

/// Winding of `h` around the origin along the positively oriented unit circle.
pub fn winding_number(h: &LaurentPoly) -> Result<WindingResult> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = -h.lo().unwrap();
    let p = h.shift(m);
    let inside = count_roots_in_open_unit_disk(&p)? as i64;
    Ok(WindingResult { winding: inside - m, roots_inside: inside, pole_order_at_zero: m })
}

/// Whether `|p| ≡ 1` on the circle, decided as the identity `p·p* = 1`.
pub fn is_unimodular(p: &LaurentPoly) -> bool {
    (p * &p.star()).is_one()
}

/// The exact check behind "a unimodular polynomial with nonzero constant term
/// is constant": returns `Some(is_constant)` for certified-unimodular `p` with
/// `p(0) ≠ 0`, and `None` when the hypotheses fail.
pub fn unimodular_polynomial_is_constant(p: &LaurentPoly) -> Option<bool> {
    if !p.is_polynomial() || p.coeff(0).is_zero() || !is_unimodular(p) {
        return None;
    }
    Some(p.hi() == Some(0))
}
