//! Packing pipeline: greedy construction, single circle probes at full
//! angular resolution, and a small randomized probe search.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mizel_bench::bench_packing;
use mizel_core::{
    exactly_m_search, greedy_circle_packing, probe_circle_intersection, Circle, Point2,
    ProbeFamily, ProbeTarget,
};

fn packing_pipeline(c: &mut Criterion) {
    let outer = Circle::new(Point2::ORIGIN, 1.0);
    let mut group = c.benchmark_group("packing");
    group.sample_size(20);
    group.bench_function("greedy_64", |b| {
        b.iter(|| greedy_circle_packing(black_box(outer), 0.05, 64, 42).unwrap())
    });
    group.finish();

    let k = bench_packing();
    let probe = Circle::new(Point2::new(0.3, 0.1), 0.5);
    c.bench_function("probe_3600", |b| {
        b.iter(|| probe_circle_intersection(black_box(&k), probe, 3600).unwrap())
    });

    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("random_64", |b| {
        b.iter(|| {
            exactly_m_search(ProbeTarget::Compact(&k), 3, ProbeFamily::Random, 64, 9).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, packing_pipeline);
criterion_main!(benches);
