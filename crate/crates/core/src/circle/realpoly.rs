//! Univariate polynomials over ℚ and Sturm-sequence machinery.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial with ascending rational coefficients; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPoly(Vec<BigRational>);

impl RealPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RealPoly(c)
    }

    pub fn zero() -> Self {
        RealPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn add(&self, o: &RealPoly) -> RealPoly {
        let n = self.0.len().max(o.0.len());
        RealPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let b = o.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> RealPoly {
        RealPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &RealPoly) -> RealPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RealPoly) -> RealPoly {
        if self.is_zero() || o.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }

    pub fn derivative(&self) -> RealPoly {
        RealPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    /// Euclidean remainder; panics on a zero divisor.
    pub fn rem(&self, d: &RealPoly) -> RealPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            if !f.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    r[k - dd + i] -= &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        RealPoly::new(r)
    }

    /// Monic rescaling by a positive factor keeps signs; used to tame growth.
    fn positive_normalized(&self) -> RealPoly {
        match self.lead() {
            None => RealPoly::zero(),
            Some(l) => {
                let s = l.abs();
                RealPoly(self.0.iter().map(|c| c / &s).collect())
            }
        }
    }

    /// Sign at `+∞` (`at_plus`) or `−∞`.
    pub fn sign_at_infinity(&self, at_plus: bool) -> i8 {
        match (self.degree(), self.lead()) {
            (Some(d), Some(l)) => {
                let s = if l.is_positive() { 1 } else { -1 };
                if at_plus || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Signed remainder sequence `s0 = p, s1 = q, s_{k+1} = −rem(s_{k−1}, s_k)`.
pub fn signed_remainder_sequence(p: &RealPoly, q: &RealPoly) -> Vec<RealPoly> {
    let mut seq = vec![p.clone()];
    if q.is_zero() {
        return seq;
    }
    seq.push(q.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg().positive_normalized();
        if r.is_zero() {
            return seq;
        }
        seq.push(r);
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at_infinity(seq: &[RealPoly], at_plus: bool) -> usize {
    variations(seq.iter().map(|p| p.sign_at_infinity(at_plus)))
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_distinct_real_roots(p: &RealPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = signed_remainder_sequence(p, &p.derivative());
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Cauchy index of `q/p` over the whole real line: jumps from −∞ to +∞ count
/// +1, jumps from +∞ to −∞ count −1.
pub fn cauchy_index(q: &RealPoly, p: &RealPoly) -> i64 {
    assert!(!p.is_zero(), "cauchy index with zero denominator");
    let q = if p.degree() == Some(0) { RealPoly::zero() } else { q.rem(p) };
    let seq = signed_remainder_sequence(p, &q);
    variations_at_infinity(&seq, false) as i64 - variations_at_infinity(&seq, true) as i64
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn one() -> BigRational {
    BigRational::one()
}
