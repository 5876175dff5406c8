use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use loopgrass::beta::beta;
use loopgrass::circle::{count_roots_in_open_unit_disk, winding_number};
use loopgrass::corpus::generate;
use loopgrass::lattice::{alpha, filtration_level, rank};
use loopgrass::loops::lambda_r;
use loopgrass::strata::{phi, phi_inverse};
use loopgrass::{GaussianRational, LaurentPoly};

fn alpha_beta(c: &mut Criterion) {
    let mut g = c.benchmark_group("alpha_beta");
    for r in 1..=4 {
        let f = lambda_r(r);
        let w = alpha(&f, r).unwrap();
        g.bench_with_input(BenchmarkId::new("alpha", r), &f, |b, f| b.iter(|| alpha(black_box(f), r).unwrap()));
        g.bench_with_input(BenchmarkId::new("beta", r), &w, |b, w| b.iter(|| beta(black_box(w)).unwrap()));
        g.bench_with_input(BenchmarkId::new("rank_level", r), &w, |b, w| {
            b.iter(|| (rank(black_box(w)), filtration_level(black_box(w))))
        });
    }
    g.finish();
}

fn winding(c: &mut Criterion) {
    let mut g = c.benchmark_group("winding");
    for deg in [2usize, 4, 8] {
        let coeffs: Vec<GaussianRational> = (0..=deg)
            .map(|k| GaussianRational::from_fracs(k as i64 + 1, 3, 1 - k as i64, 5))
            .collect();
        let p = LaurentPoly::from_coeffs(&coeffs);
        g.bench_with_input(BenchmarkId::new("schur_cohn", deg), &p, |b, p| {
            b.iter(|| count_roots_in_open_unit_disk(black_box(p)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("winding", deg), &p, |b, p| b.iter(|| winding_number(black_box(p))));
    }
    g.finish();
}

fn strata(c: &mut Criterion) {
    let corpus = generate(3, 1);
    let mut g = c.benchmark_group("strata");
    g.sample_size(20);
    for (s, x) in corpus.strata.iter().step_by(12) {
        let r = s.r();
        let w = phi(s, x).unwrap();
        g.bench_with_input(BenchmarkId::new("phi", r), &(s, x), |b, (s, x)| b.iter(|| phi(black_box(s), black_box(x)).unwrap()));
        g.bench_with_input(BenchmarkId::new("phi_inverse", r), &w, |b, w| {
            b.iter(|| phi_inverse(black_box(w), s.lambda()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, alpha_beta, winding, strata);
criterion_main!(benches);
