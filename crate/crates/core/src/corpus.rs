//! Seeded test family: conjugates of `λ_r`, their products, `U(2)` loops,
//! lattices, and stratum/fiber pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{GaussianRational, LaurentPoly};
use crate::lattice::{alpha, HomomorphismData, Lattice, ProjectivePoint};
use crate::loops::{conjugate_action, diag_u2, generator_loop, lambda_r, pointwise_product, ConstantUnitary, UnitaryLoop};
use crate::strata::{phi, FiberVector, StratumData};

#[derive(Clone, Debug)]
pub struct Corpus {
    pub group_elements: Vec<ConstantUnitary>,
    /// `SU(2)` loops with the name they were built from.
    pub loops: Vec<(String, UnitaryLoop)>,
    pub u2_loops: Vec<(String, UnitaryLoop)>,
    pub lattices: Vec<(String, Lattice)>,
    pub strata: Vec<(StratumData, FiberVector)>,
}

fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_fracs(n, d, 0, 1)
}

/// Rotations from Pythagorean triples and two genuinely complex `SU(2)` elements.
pub fn standard_group_elements() -> Vec<ConstantUnitary> {
    let mut out: Vec<ConstantUnitary> = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]
        .iter()
        .map(|&(a, b, c)| ConstantUnitary::rotation(q(a, c), q(b, c)).expect("Pythagorean"))
        .collect();
    out.push(ConstantUnitary::su2(GaussianRational::from_fracs(2, 5, 4, 5), GaussianRational::from_fracs(1, 5, 2, 5)).unwrap());
    out.push(ConstantUnitary::su2(GaussianRational::from_fracs(0, 1, 3, 5), q(4, 5)).unwrap());
    out
}

fn small(rng: &mut ChaCha8Rng) -> GaussianRational {
    let d = *[1, 2, 3].choose(rng).unwrap();
    GaussianRational::from_fracs(rng.gen_range(-2..=2), d, rng.gen_range(-2..=2), d)
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let c = small(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn line(rng: &mut ChaCha8Rng) -> ProjectivePoint {
    loop {
        let v = vec![small(rng), small(rng)];
        if let Ok(p) = ProjectivePoint::new(v) {
            return p;
        }
    }
}

/// `A = [[1, b], [0, 1]]·[[1, 0], [z^{−2r−1}c, 1]]` or the reverse order.
fn unipotent_data(rng: &mut ChaCha8Rng, lambda: HomomorphismData) -> StratumData {
    let r = lambda.r() as i64;
    let poly = |rng: &mut ChaCha8Rng| -> Vec<GaussianRational> {
        let n = rng.gen_range(0..=2);
        (0..n).map(|_| small(rng)).collect()
    };
    let (b, c) = (poly(rng), poly(rng));
    // w^{2r}·b(w)·c(w), ascending in w
    let prod = (&LaurentPoly::from_coeffs(&b) * &LaurentPoly::from_coeffs(&c)).shift(2 * r);
    let bc = prod.poly_coeffs();
    let (a, d) = if rng.gen_bool(0.5) { (bc, vec![]) } else { (vec![], bc) };
    StratumData::new(lambda, a, b, c, d).expect("unipotent products have det 1")
}

pub fn generate(max_r: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = standard_group_elements();
    let mut loops = Vec::new();
    for r in 1..=max_r {
        loops.push((format!("lambda_{r}"), lambda_r(r)));
        for (i, g) in group.iter().enumerate() {
            loops.push((format!("g{i}·lambda_{r}"), conjugate_action(g, &lambda_r(r)).unwrap()));
        }
        for k in 0..5 {
            let p = line(&mut rng);
            loops.push((format!("generator r={r} line={p} #{k}"), generator_loop(r, &p, None).unwrap()));
        }
    }
    let base: Vec<UnitaryLoop> = loops.iter().map(|(_, f)| f.clone()).filter(|f| f.degree_bound() == 1).collect();
    for k in 0..12 {
        let f = base.choose(&mut rng).unwrap();
        let g = base.choose(&mut rng).unwrap();
        loops.push((format!("product #{k}"), pointwise_product(f, g).unwrap()));
    }

    let mut u2_loops: Vec<(String, UnitaryLoop)> = (-3..=3).map(|k| (format!("diag(z^{k}, 1)"), diag_u2(k))).collect();
    for k in [-2i64, -1, 1, 2] {
        let g = group.choose(&mut rng).unwrap();
        u2_loops.push((format!("g·diag(z^{k}, 1)"), conjugate_action(g, &diag_u2(k)).unwrap()));
        let f = base.choose(&mut rng).unwrap();
        u2_loops.push((format!("loop·diag(z^{k}, 1)"), pointwise_product(f, &diag_u2(k)).unwrap()));
    }
    for (name, f) in loops.iter().take(6) {
        u2_loops.push((format!("{name} (as U(2))"), crate::loops::check_poly_loop(f.matrix(), f.degree_bound(), crate::loops::GroupTag::U2).unwrap()));
    }

    let mut strata = Vec::new();
    for r in 1..=max_r {
        for k in 0..12 {
            let lambda = match k % 3 {
                0 => HomomorphismData::from_line(r, &ProjectivePoint::e2()),
                1 => HomomorphismData::from_line(r, &line(&mut rng)),
                _ => HomomorphismData::from_line(r, &ProjectivePoint::e2()).act(group.choose(&mut rng).unwrap()),
            };
            let s = unipotent_data(&mut rng, lambda);
            let fiber = if k % 4 == 0 {
                FiberVector::zero(r)
            } else {
                FiberVector((0..2 * r - 1).map(|_| small(&mut rng)).collect())
            };
            let fiber = if k % 4 == 1 && fiber.is_zero() {
                FiberVector((0..2 * r - 1).map(|_| small_nonzero(&mut rng)).collect())
            } else {
                fiber
            };
            strata.push((s, fiber));
        }
    }

    let mut lattices: Vec<(String, Lattice)> =
        loops.iter().map(|(n, f)| (format!("alpha({n})"), alpha(f, f.degree_bound()).unwrap())).collect();
    for (i, (s, x)) in strata.iter().enumerate() {
        lattices.push((format!("phi #{i} (r={})", s.r()), phi(s, x).unwrap()));
    }
    lattices.push(("K+".into(), Lattice::k_plus(0)));
    lattices.push(("W_{ze1, e1+z^-1 e2}".into(), crate::lattice::level_one_rank_zero(GaussianRational::one())));

    Corpus { group_elements: group, loops, u2_loops, lattices, strata }
}
