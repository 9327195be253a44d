use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rug::Float;

use cyclochow::group::{generator_pairs, verify_cocycle, Cocycle};
use cyclochow::numerics::{hyp2f1, period, QuadSpec};
use cyclochow::pf::verify_certificate;
use cyclochow::rank::{rank_delta, rank_full};
use cyclochow::{CycloNum, SurfaceParams};

fn exact(c: &mut Criterion) {
    let x = CycloNum::zeta(14, 3).checked_add(&CycloNum::from_int(14, 2)).unwrap();
    let y = CycloNum::zeta(14, 5).scale_int(-3);
    c.bench_function("cyclonum mul Q(zeta_14)", |b| b.iter(|| black_box(&x).checked_mul(black_box(&y)).unwrap()));
    c.bench_function("cyclonum inv Q(zeta_14)", |b| b.iter(|| black_box(&x).inv().unwrap()));

    let pairs = generator_pairs(5, 2);
    c.bench_function("chi cocycle, generator pairs (5,2)", |b| {
        b.iter(|| verify_cocycle(Cocycle::Chi, black_box(&pairs)).unwrap())
    });
    c.bench_function("certificate identity (7,3)", |b| b.iter(|| verify_certificate(7, 3).unwrap()));

    let mut g = c.benchmark_group("rank");
    g.sample_size(10);
    g.bench_function("rank_delta (5,2)", |b| b.iter(|| rank_delta(5, 2).unwrap()));
    g.bench_function("rank_full (5,2)", |b| b.iter(|| rank_full(5, 2).unwrap()));
    g.finish();
}

fn numeric(c: &mut Criterion) {
    let spec = QuadSpec::new(1e-12, 8, 30).unwrap();
    let lam = Float::with_val(spec.bits(), 0.3);
    let (a, b_, cc) = (
        rug::Rational::from((2, 5)),
        rug::Rational::from((3, 5)),
        rug::Rational::from((6, 5)),
    );
    c.bench_function("2F1 series, 30 digits", |b| b.iter(|| hyp2f1(&a, &b_, &cc, black_box(&lam), &spec).unwrap()));

    let p = SurfaceParams::base_point(5, 2).unwrap();
    let mut g = c.benchmark_group("quadrature");
    g.sample_size(10);
    g.bench_function("period (5,2,1/2,1/4), 30 digits", |b| b.iter(|| period(&p, &spec).unwrap()));
    g.finish();
}

criterion_group!(benches, exact, numeric);
criterion_main!(benches);
