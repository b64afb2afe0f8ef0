//! Membership oracles: distance from a query point to the reference set.
//! A point "lies on" the set when its distance is at most the active
//! membership tolerance.

use crate::curve::SampledCurve;
use crate::geom::Point2;

use super::index::CurveDistanceIndex;

/// Distance oracle for the set being scanned. Implementations must be pure:
/// the same query always returns the same distance.
pub trait SetMembership: Sync {
    /// Distance from p to the set; 0 when p lies on it.
    fn distance(&self, p: Point2) -> f64;
}

/// Closed sampled curve, grid-accelerated. Distances are exact minima over
/// the polyline's segments, bitwise equal to a full scan.
pub struct CurveMembership {
    index: CurveDistanceIndex,
}

impl CurveMembership {
    pub fn new(curve: &SampledCurve) -> CurveMembership {
        CurveMembership {
            index: CurveDistanceIndex::closed(curve.points()),
        }
    }

    pub fn from_closed_points(points: &[Point2]) -> CurveMembership {
        CurveMembership {
            index: CurveDistanceIndex::closed(points),
        }
    }

    /// (distance, segment index) of the closest polyline segment.
    pub fn nearest(&self, p: Point2) -> (f64, usize) {
        self.index.nearest(p)
    }
}

impl SetMembership for CurveMembership {
    #[inline]
    fn distance(&self, p: Point2) -> f64 {
        self.index.distance(p)
    }
}

/// Open polyline chain (an arc): the closing chord is not part of the set.
pub struct OpenChainMembership {
    index: CurveDistanceIndex,
}

impl OpenChainMembership {
    /// # Panics
    /// If fewer than 2 points are given.
    pub fn new(points: &[Point2]) -> OpenChainMembership {
        assert!(points.len() >= 2, "an open chain needs at least 2 points");
        OpenChainMembership {
            index: CurveDistanceIndex::open_chain(points),
        }
    }
}

impl SetMembership for OpenChainMembership {
    #[inline]
    fn distance(&self, p: Point2) -> f64 {
        self.index.distance(p)
    }
}

/// Finite point set: distance to the nearest member point.
pub struct PointSetMembership {
    points: Vec<Point2>,
}

impl PointSetMembership {
    pub fn new(points: Vec<Point2>) -> PointSetMembership {
        PointSetMembership { points }
    }
}

impl SetMembership for PointSetMembership {
    fn distance(&self, p: Point2) -> f64 {
        self.points
            .iter()
            .map(|&q| q.dist(p))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Reference implementation: brute-force scan over the closed polyline.
/// Used as the oracle against [`CurveMembership`].
impl SetMembership for SampledCurve {
    #[inline]
    fn distance(&self, p: Point2) -> f64 {
        self.nearest_distance(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::generators::generate_ellipse;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn indexed_curve_distance_equals_brute_force() {
        let curve = generate_ellipse(1.5, 1.0, 740).unwrap();
        let fast = CurveMembership::new(&curve);
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..400 {
            let p = Point2::new(rng.random_range(-2.5..2.5), rng.random_range(-2.5..2.5));
            assert_eq!(fast.distance(p), curve.distance(p));
        }
    }

    #[test]
    fn point_set_distance_is_min_over_members() {
        let m = PointSetMembership::new(vec![Point2::new(0.0, 0.0), Point2::new(3.0, 4.0)]);
        assert_eq!(m.distance(Point2::new(0.0, 0.0)), 0.0);
        assert_eq!(m.distance(Point2::new(3.0, 0.0)), 3.0);
    }
}
