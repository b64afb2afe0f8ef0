//! Shared fixtures for the benchmark targets: a noisy point set with
//! planted rectangles, standard curves, and the reference packing.

use mizel_core::{
    generate_ellipse, greedy_circle_packing, Circle, CompactSetK, Point2, SampledCurve,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform points in the unit square around the origin plus one exact and
/// one broken rectangle, so scans exercise both outcomes.
pub fn noisy_points(n: usize, seed: u64) -> Vec<Point2> {
    assert!(n >= 8, "fixture needs room for the planted rectangles");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point2> = (0..n - 8)
        .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    points.extend([
        Point2::new(0.1, 0.1),
        Point2::new(0.7, 0.1),
        Point2::new(0.7, 0.5),
        Point2::new(0.1, 0.5),
    ]);
    points.extend([
        Point2::new(-0.8, -0.2),
        Point2::new(-0.3, -0.2),
        Point2::new(-0.3, 0.2),
        Point2::new(-0.82, 0.2),
    ]);
    points
}

pub fn bench_ellipse(n: usize) -> SampledCurve {
    generate_ellipse(1.5, 1.0, n).expect("fixture parameters are valid")
}

/// The 64-disk packing used throughout the acceptance checks.
pub fn bench_packing() -> CompactSetK {
    let outer = Circle::new(Point2::ORIGIN, 1.0);
    let packing = greedy_circle_packing(outer, 0.05, 64, 42).expect("fixture parameters are valid");
    CompactSetK::Disks(packing)
}
