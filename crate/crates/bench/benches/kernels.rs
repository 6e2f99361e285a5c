use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use grslice_bench::{principal_minor, slice_ideal, SLICE_SIZES};
use grslice_core::groebner::{buchberger, Budget, TermOrder};
use grslice_core::lattice::{meet, Coweight, RootDatum};
use grslice_core::poisson::{BracketEngine, GroupChart};
use grslice_core::slice::{build_generic_X, det_t};

fn bench_buchberger(c: &mut Criterion) {
    let mut group = c.benchmark_group("buchberger");
    group.sample_size(10);
    for &(n, k) in SLICE_SIZES {
        let gens = slice_ideal(n, k);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{k}")), &gens, |b, g| {
            b.iter(|| buchberger(black_box(g), TermOrder::Grevlex, &Budget::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_det_t(c: &mut Criterion) {
    let mut group = c.benchmark_group("det_t");
    for (n, k) in [(3, 2), (4, 1), (4, 2)] {
        let x = build_generic_X(n, k).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{k}")), &x, |b, x| {
            b.iter(|| det_t(black_box(x)).unwrap())
        });
    }
    group.finish();
}

fn bench_bracket(c: &mut Criterion) {
    let mut group = c.benchmark_group("bracket");
    for (n, cap) in [(2, 3), (3, 3)] {
        let chart = GroupChart::new(n, cap).unwrap();
        let p = principal_minor(&chart, 1);
        let q = principal_minor(&chart, 2);
        group.bench_function(BenchmarkId::from_parameter(format!("n{n}_N{cap}")), |b| {
            // fresh engine per iteration so the memo does not carry over
            b.iter(|| BracketEngine::new(&chart).bracket(black_box(&p), black_box(&q)).unwrap())
        });
    }
    group.finish();
}

fn bench_meet(c: &mut Criterion) {
    let d = RootDatum::sl(4);
    let a = Coweight::from_ints(&d, &[3, 6, 3]).unwrap();
    let b = Coweight::from_ints(&d, &[4, 5, 2]).unwrap();
    c.bench_function("meet/sl4", |bch| bch.iter(|| meet(black_box(&a), black_box(&b)).unwrap()));
}

criterion_group!(benches, bench_buchberger, bench_det_t, bench_bracket, bench_meet);
criterion_main!(benches);
