//! Curve machinery: indexed nearest-distance queries against the naive
//! segment loop, caliper width profiles, and tangent-disk classification.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mizel_bench::bench_ellipse;
use mizel_core::{
    classify_curve, point_segment_distance, width_function, ClassificationParams, CurveMembership,
    Point2, SetMembership, ToleranceContext,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Queries hovering near the boundary, the profile completed rectangle
/// corners actually have during a scan.
fn near_queries(curve: &mizel_core::SampledCurve, count: usize) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..count)
        .map(|_| {
            let p = curve.point(rng.random_range(0..curve.len()));
            Point2::new(
                p.x + rng.random_range(-0.1..0.1),
                p.y + rng.random_range(-0.1..0.1),
            )
        })
        .collect()
}

fn box_queries(count: usize) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..count)
        .map(|_| Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-1.5..1.5)))
        .collect()
}

fn nearest_distance_queries(c: &mut Criterion) {
    let curve = bench_ellipse(2048);
    let membership = CurveMembership::new(&curve);
    let points = curve.points();
    let segment_loop = |q: Point2| {
        (0..points.len())
            .map(|i| point_segment_distance(q, points[i], points[(i + 1) % points.len()]))
            .fold(f64::INFINITY, f64::min)
    };

    let mut group = c.benchmark_group("nearest_2048");
    for (label, queries) in [
        ("near", near_queries(&curve, 512)),
        ("box", box_queries(512)),
    ] {
        group.bench_function(format!("indexed_{label}"), |b| {
            b.iter(|| {
                queries
                    .iter()
                    .map(|q| membership.distance(black_box(*q)))
                    .sum::<f64>()
            })
        });
        group.bench_function(format!("segment_loop_{label}"), |b| {
            b.iter(|| {
                queries
                    .iter()
                    .map(|q| segment_loop(black_box(*q)))
                    .sum::<f64>()
            })
        });
    }
    group.finish();
}

fn width_and_classes(c: &mut Criterion) {
    let curve = bench_ellipse(2048);
    let tol = ToleranceContext::for_scale(2.0);
    c.bench_function("width_function_720", |b| {
        b.iter(|| width_function(black_box(&curve), 720, &tol).unwrap())
    });

    let params = ClassificationParams::for_curve(&curve, 2.0);
    let mut group = c.benchmark_group("classify_2048");
    group.sample_size(20);
    group.bench_function("tangent_disk", |b| {
        b.iter(|| classify_curve(black_box(&curve), &params).unwrap())
    });
    group.finish();
}

criterion_group!(benches, nearest_distance_queries, width_and_classes);
criterion_main!(benches);
