//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use loopgrass::arith::rational_to_f64;
use loopgrass::{GaussianRational, LaurentPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The exact point `((1 − t²) + 2ti)/(1 + t²)` of the unit circle.
fn circle_point(t: &BigRational) -> GaussianRational {
    let t2 = t * t;
    let den = BigRational::one() + &t2;
    GaussianRational::new((BigRational::one() - &t2) / &den, (t * BigRational::from_integer(2.into())) / den)
}

fn dyadic(x: f64) -> BigRational {
    let scale = (1u64 << 24) as f64;
    BigRational::new(BigInt::from((x * scale).round() as i64), BigInt::from(1u64 << 24))
}

/// Mesh point at angle `θ ∈ (−π, π)`, rounded to an exact rational point.
fn mesh_point(theta: f64) -> GaussianRational {
    circle_point(&dyadic((theta / 2.0).tan()))
}

fn to_c(z: &GaussianRational) -> (f64, f64) {
    (rational_to_f64(z.re()), rational_to_f64(z.im()))
}

fn angle(z: &GaussianRational) -> f64 {
    let (x, y) = to_c(z);
    y.atan2(x)
}

/// Winding of `p(e^{iθ})` about 0 from exact samples, certified step by step:
/// with `L = Σ |k|·|a_k|` bounding `|p'|` on the circle, a step whose arc `δ`
/// satisfies `L·δ < |p(z_j)|` cannot cross or wind around zero. Steps failing
/// the test are bisected. `None` when certification does not succeed.
pub fn sampled_winding(p: &LaurentPoly) -> Option<i64> {
    use std::f64::consts::PI;
    let lip: f64 = p
        .terms()
        .map(|(k, c)| (k.unsigned_abs() as f64) * rational_to_f64(&c.norm_sq()).sqrt())
        .sum::<f64>()
        * 1.001
        + 1e-12;
    let sample = |theta: f64| -> Option<Sample> {
        let z = if theta.abs() >= PI { GaussianRational::from_ints(-1, 0) } else { mesh_point(theta) };
        let v = p.eval(&z)?;
        Some(Sample { theta, at: angle(&z), modulus: rational_to_f64(&v.norm_sq()).sqrt(), arg: angle(&v) })
    };
    let n0 = 64;
    let mut pts = Vec::with_capacity(n0 + 1);
    for j in 0..=n0 {
        pts.push(sample(-PI + 2.0 * PI * j as f64 / n0 as f64)?);
    }
    let mut total = 0.0;
    for w in pts.windows(2) {
        total += certified_step(&w[0], &w[1], lip, 0, &sample)?;
    }
    let w = total / (2.0 * PI);
    ((w - w.round()).abs() < 1e-6).then_some(w.round() as i64)
}

struct Sample {
    theta: f64,
    at: f64,
    modulus: f64,
    arg: f64,
}

fn certified_step(a: &Sample, b: &Sample, lip: f64, depth: u32, sample: &dyn Fn(f64) -> Option<Sample>) -> Option<f64> {
    use std::f64::consts::PI;
    let mut arc = (b.at - a.at).abs();
    if arc > PI {
        arc = 2.0 * PI - arc;
    }
    if lip * arc * 1.01 < a.modulus.max(b.modulus) * 0.9 {
        let mut d = b.arg - a.arg;
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        return Some(d);
    }
    if depth >= 40 {
        return None;
    }
    let m = sample(0.5 * (a.theta + b.theta))?;
    Some(certified_step(a, &m, lip, depth + 1, sample)? + certified_step(&m, b, lip, depth + 1, sample)?)
}

pub fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let d = rng.gen_range(1..=4);
    GaussianRational::from_fracs(rng.gen_range(-6..=6), d, rng.gen_range(-6..=6), d)
}

/// Random polynomial of exact degree `1..=8` with a nonzero constant term.
pub fn random_polynomial(rng: &mut ChaCha8Rng) -> LaurentPoly {
    loop {
        let deg = rng.gen_range(1..=8);
        let p = LaurentPoly::from_coeffs(&(0..=deg).map(|_| small_gaussian(rng)).collect::<Vec<_>>());
        if p.hi() == Some(deg) && p.lo() == Some(0) {
            return p;
        }
    }
}
