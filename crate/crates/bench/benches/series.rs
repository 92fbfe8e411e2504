use bdes_core::genfun::{expand, expand_functional, GfId};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    for id in [GfId::B132, GfId::B123, GfId::W, GfId::G] {
        g.bench_with_input(BenchmarkId::new("closed", id), &id, |b, &id| {
            b.iter(|| expand(id, black_box(12)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("functional", id), &id, |b, &id| {
            b.iter(|| expand_functional(id, black_box(12)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, series);
criterion_main!(benches);
