//! Rank bookkeeping for `K_G` and `K_T` of the filtration `F_0 ⊂ F_2 ⊂ …`.
//!
//! `R(T) = ℤ[t, t⁻¹]`, `R(G) = ℤ[V]` with `V ↦ t + t⁻¹`, and the Weyl group acts
//! by `t ↦ t⁻¹`. Modules are tracked by labeled ranks only.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RTElement {
    terms: BTreeMap<i64, BigInt>,
}

impl RTElement {
    pub fn zero() -> Self {
        RTElement::default()
    }

    pub fn one() -> Self {
        RTElement::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        RTElement::from_terms([(exp, c)])
    }

    pub fn t() -> Self {
        RTElement::monomial(1, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(it: I) -> Self {
        let mut out = RTElement::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add(&self, rhs: &RTElement) -> RTElement {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &RTElement) -> RTElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RTElement {
        RTElement::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }

    pub fn mul(&self, rhs: &RTElement) -> RTElement {
        let mut out = RTElement::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }

    pub fn shift(&self, k: i64) -> RTElement {
        RTElement::from_terms(self.terms().map(|(e, c)| (e + k, c.clone())))
    }

    pub fn pow(&self, n: u32) -> RTElement {
        (0..n).fold(RTElement::one(), |acc, _| acc.mul(self))
    }

    fn top(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    /// Exact quotient by `t − t⁻¹`, if it exists.
    fn div_t_minus_inv(&self) -> Option<RTElement> {
        // (t − t⁻¹)·q = p  ⟺  (t² − 1)·q = t·p; long division by the monic t² − 1
        let mut rem = self.shift(1);
        let mut q = RTElement::zero();
        while let Some((e, c)) = rem.top() {
            let lo = rem.terms.keys().next().copied().unwrap();
            if e - 2 < lo {
                return None;
            }
            let term = RTElement::monomial(e - 2, c.clone());
            rem = rem.sub(&term.mul(&RTElement::from_terms([(2, BigInt::one()), (0, -BigInt::one())])));
            q = q.add(&term);
        }
        Some(q)
    }
}

impl fmt::Display for RTElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("{c}·t^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in `V` with integer coefficients, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RGElement {
    coeffs: Vec<BigInt>,
}

impl RGElement {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RGElement { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        RGElement::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for RGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}·V^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn weyl_act(x: &RTElement) -> RTElement {
    RTElement::from_terms(x.terms().map(|(e, c)| (-e, c.clone())))
}

fn v_in_rt() -> RTElement {
    RTElement::from_terms([(1, BigInt::one()), (-1, BigInt::one())])
}

pub fn restrict_rg_to_rt(x: &RGElement) -> RTElement {
    let v = v_in_rt();
    x.coeffs
        .iter()
        .enumerate()
        .fold(RTElement::zero(), |acc, (k, c)| acc.add(&v.pow(k as u32).mul(&RTElement::monomial(0, c.clone()))))
}

/// Rewrites a Weyl-invariant element as a polynomial in `V`.
pub fn invariants_to_rg(x: &RTElement) -> Result<RGElement> {
    if weyl_act(x) != *x {
        return Err(Error::NotWeylInvariant);
    }
    let v = v_in_rt();
    let mut rem = x.clone();
    let mut coeffs: Vec<BigInt> = Vec::new();
    while let Some((e, c)) = rem.top() {
        let n = e as usize;
        if coeffs.len() <= n {
            coeffs.resize(n + 1, BigInt::zero());
        }
        coeffs[n] = c.clone();
        rem = rem.sub(&v.pow(n as u32).mul(&RTElement::monomial(0, c.clone())));
    }
    Ok(RGElement::new(coeffs))
}

/// `p = A + t·B` with `A, B ∈ R(G)`.
pub fn decompose_over_rg(p: &RTElement) -> (RGElement, RGElement) {
    let b = p.sub(&weyl_act(p)).div_t_minus_inv().expect("anti-invariants are divisible by t − t⁻¹");
    let a = p.sub(&RTElement::t().mul(&b));
    (
        invariants_to_rg(&a).expect("A is invariant"),
        invariants_to_rg(&b).expect("B is invariant"),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    RG,
    RT,
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingTag::RG => "RG",
            RingTag::RT => "RT",
        })
    }
}

impl std::str::FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "RG" => Ok(RingTag::RG),
            "RT" => Ok(RingTag::RT),
            _ => Err(Error::Parse(format!("unknown ring {s:?}; expected RG or RT"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: RingTag,
    pub labels: Vec<String>,
    pub odd_rank: usize,
}

impl FreeModule {
    pub fn even_rank(&self) -> usize {
        self.labels.len()
    }
}

/// `K^*(F_{2r}, F_{2r−2})` via the Thom isomorphism for `τ^{2r−1}` over `ℙ¹`.
pub fn k_of_quotient(r: usize, ring: RingTag) -> Result<FreeModule> {
    if r < 1 {
        return Err(Error::OutOfRange("the quotient F_{2r}/F_{2r-2} needs r ≥ 1".into()));
    }
    Ok(FreeModule { ring, labels: (0..2).map(|i| format!("Thom r={r}, cell {i}")).collect(), odd_rank: 0 })
}

/// `K^*(F_{2r})` from the split short exact sequences, starting at `F_0 = pt`.
pub fn k_of_filtration(r: usize, ring: RingTag) -> FreeModule {
    let mut m = FreeModule { ring, labels: vec!["F_0 = pt".into()], odd_rank: 0 };
    for k in 1..=r {
        let q = k_of_quotient(k, ring).expect("k ≥ 1");
        m.labels.extend(q.labels);
        m.odd_rank += q.odd_rank;
    }
    m
}

/// Rank of the closed form `∏_{k=0}^r R(G)` displayed alongside the recursion.
pub fn closed_form_rank(r: usize) -> usize {
    r + 1
}

/// Disagreement between the recursion and the displayed closed form, if any.
pub fn closed_form_discrepancy(r: usize) -> Option<String> {
    let got = k_of_filtration(r, RingTag::RG).even_rank();
    let shown = closed_form_rank(r);
    (got != shown).then(|| format!("recursion gives rank {got}, closed form ∏_{{k=0}}^{r} R(G) has rank {shown}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitDescription {
    pub ring: RingTag,
    /// Even rank of each truncation `F_0, F_2, …, F_{2·depth}`.
    pub truncation_ranks: Vec<usize>,
    /// Labels of the rank-one factors, in the order they appear.
    pub factor_labels: Vec<String>,
    pub odd_rank: usize,
    /// Restrictions `K(F_{2r}) → K(F_{2r−2})` are split surjections, so `lim¹ = 0`.
    pub restrictions_surjective: bool,
}

pub fn k_limit_description(ring: RingTag, depth: usize) -> LimitDescription {
    let stages: Vec<FreeModule> = (0..=depth).map(|r| k_of_filtration(r, ring)).collect();
    let restrictions_surjective = stages.windows(2).all(|w| w[1].labels.starts_with(&w[0].labels));
    LimitDescription {
        ring,
        truncation_ranks: stages.iter().map(FreeModule::even_rank).collect(),
        factor_labels: stages.last().unwrap().labels.clone(),
        odd_rank: stages.iter().map(|m| m.odd_rank).max().unwrap_or(0),
        restrictions_surjective,
    }
}

/// Whether a 2×2 matrix over `ℤ[V]` is singular over the fraction field, and
/// whether it is zero.
fn rank_2x2(m: &[[RGElement; 2]; 2]) -> usize {
    let to_rt = |x: &RGElement| restrict_rg_to_rt(x);
    if m.iter().flatten().all(RGElement::is_zero) {
        return 0;
    }
    let det = to_rt(&m[0][0]).mul(&to_rt(&m[1][1])).sub(&to_rt(&m[0][1]).mul(&to_rt(&m[1][0])));
    if det.is_zero() {
        1
    } else {
        2
    }
}

/// Compares the `R(G)`-rank of the Weyl-invariant part of an `R(T)`-module
/// (labels fixed, coefficients acted on by `t ↦ t⁻¹`) with an `R(G)`-module.
pub fn weyl_invariance_check(rt_mod: &FreeModule, rg_mod: &FreeModule) -> Result<bool> {
    if rt_mod.ring != RingTag::RT || rg_mod.ring != RingTag::RG {
        return Err(Error::RingMismatch(format!("expected (RT, RG), got ({}, {})", rt_mod.ring, rg_mod.ring)));
    }
    // the Weyl action on R(T) = R(G)·1 ⊕ R(G)·t, as a matrix in that basis
    let cols = [weyl_act(&RTElement::one()), weyl_act(&RTElement::t())].map(|x| decompose_over_rg(&x));
    let sub_one = |x: &RGElement, diag: bool| {
        if diag {
            let mut c = x.coeffs.clone();
            if c.is_empty() {
                c.push(BigInt::zero());
            }
            c[0] -= 1;
            RGElement::new(c)
        } else {
            x.clone()
        }
    };
    let w_minus_1 = [
        [sub_one(&cols[0].0, true), sub_one(&cols[1].0, false)],
        [sub_one(&cols[0].1, false), sub_one(&cols[1].1, true)],
    ];
    let invariant_rank_per_label = 2 - rank_2x2(&w_minus_1);
    Ok(rt_mod.even_rank() * invariant_rank_per_label == rg_mod.even_rank() && rt_mod.odd_rank == rg_mod.odd_rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(terms: &[(i64, i64)]) -> RTElement {
        RTElement::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_act(&rt(&[(1, 1), (-1, 1)])), rt(&[(1, 1), (-1, 1)]));
        assert_eq!(weyl_act(&rt(&[(2, 1)])), rt(&[(-2, 1)]));
        let x = rt(&[(3, 2), (-1, -5), (0, 7)]);
        assert_eq!(weyl_act(&weyl_act(&x)), x);
    }

    #[test]
    fn invariants() {
        assert_eq!(invariants_to_rg(&rt(&[(1, 1), (-1, 1)])).unwrap(), RGElement::from_i64(&[0, 1]));
        // (t + t⁻¹)² − 2
        assert_eq!(invariants_to_rg(&rt(&[(2, 1), (-2, 1)])).unwrap(), RGElement::from_i64(&[-2, 0, 1]));
        assert_eq!(invariants_to_rg(&RTElement::one()).unwrap(), RGElement::from_i64(&[1]));
        assert!(matches!(invariants_to_rg(&rt(&[(1, 1)])), Err(Error::NotWeylInvariant)));
        assert_eq!(restrict_rg_to_rt(&RGElement::from_i64(&[0, 0, 1])), rt(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn decomposition() {
        let p = rt(&[(3, 1), (-2, 4), (0, -1)]);
        let (a, b) = decompose_over_rg(&p);
        assert_eq!(restrict_rg_to_rt(&a).add(&RTElement::t().mul(&restrict_rg_to_rt(&b))), p);
    }

    #[test]
    fn ranks() {
        for r in 1..=5 {
            for ring in [RingTag::RG, RingTag::RT] {
                let q = k_of_quotient(r, ring).unwrap();
                assert_eq!((q.even_rank(), q.odd_rank), (2, 0));
                assert_eq!(k_of_filtration(r, ring).even_rank(), k_of_filtration(r - 1, ring).even_rank() + 2);
            }
        }
        assert!(k_of_quotient(0, RingTag::RG).is_err());
        assert_eq!(k_of_filtration(0, RingTag::RG).labels, vec!["F_0 = pt".to_string()]);
        assert_eq!(closed_form_discrepancy(0), None);
        assert!(closed_form_discrepancy(2).is_some());
    }

    #[test]
    fn limit() {
        let d = k_limit_description(RingTag::RT, 3);
        assert_eq!(d.truncation_ranks, vec![1, 3, 5, 7]);
        assert_eq!(d.odd_rank, 0);
        assert!(d.restrictions_surjective);
    }

    #[test]
    fn weyl_check() {
        for r in 0..4 {
            assert!(weyl_invariance_check(&k_of_filtration(r, RingTag::RT), &k_of_filtration(r, RingTag::RG)).unwrap());
        }
        assert!(!weyl_invariance_check(&k_of_filtration(2, RingTag::RT), &k_of_filtration(1, RingTag::RG)).unwrap());
        assert!(weyl_invariance_check(&k_of_filtration(1, RingTag::RG), &k_of_filtration(1, RingTag::RG)).is_err());
    }
}
