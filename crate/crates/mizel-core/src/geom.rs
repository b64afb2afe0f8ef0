//! Tolerance-aware planar primitives: points, circles, rectangles, and the
//! completion/intersection predicates everything else is built on.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by the primitive predicates and constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("angle at the middle vertex deviates from a right angle by {deviation} rad (tolerance {tol})")]
    NotRightAngle { deviation: f64, tol: f64 },
    #[error("two of the input points coincide within {tol}")]
    DegenerateTriple { tol: f64 },
    #[error("vertices do not form a rectangle under the given tolerance")]
    InvalidRectangle,
    #[error("coordinate is not finite: {0}")]
    NonFinite(f64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point2 { x, y }
    }

    /// Checked constructor for boundary inputs (file parsing, CLI).
    pub fn try_new(x: f64, y: f64) -> Result<Self, GeomError> {
        if !x.is_finite() {
            return Err(GeomError::NonFinite(x));
        }
        if !y.is_finite() {
            return Err(GeomError::NonFinite(y));
        }
        Ok(Point2 { x, y })
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, treating both as vectors.
    #[inline]
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn dist_sq(self, other: Point2) -> f64 {
        (self - other).norm_sq()
    }

    /// Counterclockwise rotation by 90 degrees.
    #[inline]
    pub fn perp(self) -> Point2 {
        Point2 {
            x: -self.y,
            y: self.x,
        }
    }

    #[inline]
    pub fn scale(self, s: f64) -> Point2 {
        Point2 {
            x: self.x * s,
            y: self.y * s,
        }
    }

    pub fn normalize(self) -> Point2 {
        let n = self.norm();
        debug_assert!(n > 0.0);
        self.scale(1.0 / n)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2 {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    /// Total lexicographic order on (x, y); used for canonical witness sorting.
    pub fn lex_cmp(self, other: Point2) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, rhs: Point2) -> Point2 {
        Point2 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, rhs: Point2) -> Point2 {
        Point2 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl std::ops::Neg for Point2 {
    type Output = Point2;
    #[inline]
    fn neg(self) -> Point2 {
        Point2 {
            x: -self.x,
            y: -self.y,
        }
    }
}

/// Absolute tolerances anchored to the working set's reference diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceContext {
    /// Absolute length tolerance.
    pub eps_geom: f64,
    /// Radian tolerance for right-angle tests.
    pub eps_angle: f64,
    /// Reference diameter of the working set.
    pub scale: f64,
}

impl ToleranceContext {
    pub const DEFAULT_EPS_GEOM_REL: f64 = 1e-9;
    pub const DEFAULT_EPS_ANGLE: f64 = 1e-9;

    /// Default tolerances for a working set of the given diameter.
    pub fn for_scale(scale: f64) -> Self {
        assert!(scale > 0.0 && scale.is_finite());
        ToleranceContext {
            eps_geom: Self::DEFAULT_EPS_GEOM_REL * scale,
            eps_angle: Self::DEFAULT_EPS_ANGLE,
            scale,
        }
    }

    pub fn with_eps(scale: f64, eps_geom: f64, eps_angle: f64) -> Result<Self, GeomError> {
        if !(scale > 0.0 && eps_geom > 0.0 && eps_angle > 0.0) {
            return Err(GeomError::BadParameter(
                "tolerances and scale must be positive".into(),
            ));
        }
        if eps_geom >= scale {
            return Err(GeomError::BadParameter(
                "eps_geom must be strictly below the feature scale".into(),
            ));
        }
        Ok(ToleranceContext {
            eps_geom,
            eps_angle,
            scale,
        })
    }
}

/// A circle with positive finite radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Self {
        debug_assert!(radius > 0.0 && radius.is_finite());
        Circle { center, radius }
    }

    pub fn try_new(center: Point2, radius: f64) -> Result<Self, GeomError> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::BadParameter(format!(
                "circle radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Circle { center, radius })
    }

    /// Signed distance of `p` from the circle: negative inside, zero on it.
    #[inline]
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.center.dist(p) - self.radius
    }

    pub fn point_at(&self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(
            self.center.x + self.radius * c,
            self.center.y + self.radius * s,
        )
    }
}

/// Four vertices in cyclic order. Validity is checked by [`is_rectangle`];
/// the struct itself carries no invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub vertices: [Point2; 4],
}

impl Rectangle {
    pub fn new(vertices: [Point2; 4]) -> Self {
        Rectangle { vertices }
    }

    /// Axis-aligned construction helper, mostly for tests and figures.
    pub fn from_center(center: Point2, angle: f64, width: f64, height: f64) -> Self {
        let u = Point2::new(angle.cos(), angle.sin()).scale(width / 2.0);
        let v = u.normalize().perp().scale(height / 2.0);
        Rectangle {
            vertices: [
                center - u - v,
                center + u - v,
                center + u + v,
                center - u + v,
            ],
        }
    }
}

/// Side/diagonal summary of a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleMetrics {
    pub diagonal: f64,
    pub short: f64,
    pub long: f64,
    /// short / long, in (0, 1].
    pub aspect: f64,
}

impl RectangleMetrics {
    /// Metrics of the rectangle spanned by a right-angle triple (a, b, c)
    /// with the right angle at `b`. The diagonal is the segment a-c.
    pub fn from_right_triple(a: Point2, b: Point2, c: Point2) -> Self {
        let s1 = a.dist(b);
        let s2 = c.dist(b);
        let (short, long) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        RectangleMetrics {
            diagonal: a.dist(c),
            short,
            long,
            aspect: short / long,
        }
    }
}

/// Angular deviation of the angle at `b` in the triple (a, b, c) from a right
/// angle. Returns `None` when a side collapses to a point.
pub fn right_angle_deviation(a: Point2, b: Point2, c: Point2) -> Option<f64> {
    let u = a - b;
    let v = c - b;
    let nu = u.norm();
    let nv = v.norm();
    if nu == 0.0 || nv == 0.0 {
        return None;
    }
    // |cos(theta)| = sin(|theta - pi/2|) for theta near a right angle.
    let cos_theta = (u.dot(v) / (nu * nv)).clamp(-1.0, 1.0);
    Some(cos_theta.abs().asin())
}

/// Completes the rectangle whose right angle sits at the middle vertex `b`:
/// the fourth vertex is `a + c - b` (exact coordinate arithmetic).
pub fn complete_rectangle(
    a: Point2,
    b: Point2,
    c: Point2,
    tol: &ToleranceContext,
) -> Result<Point2, GeomError> {
    if a.dist(b) <= tol.eps_geom || b.dist(c) <= tol.eps_geom || a.dist(c) <= tol.eps_geom {
        return Err(GeomError::DegenerateTriple { tol: tol.eps_geom });
    }
    let deviation = right_angle_deviation(a, b, c).expect("sides checked non-degenerate");
    if deviation > tol.eps_angle {
        return Err(GeomError::NotRightAngle {
            deviation,
            tol: tol.eps_angle,
        });
    }
    Ok(a + c - b)
}

/// True iff the cyclic quadrilateral (a, b, c, d) satisfies the rectangle
/// invariants under `tol`: opposite sides equal, right angles, equal
/// bisecting diagonals. Degenerate inputs return false.
pub fn is_rectangle(a: Point2, b: Point2, c: Point2, d: Point2, tol: &ToleranceContext) -> bool {
    let vs = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if vs[i].dist(vs[j]) <= tol.eps_geom {
                return false;
            }
        }
    }
    // Opposite sides equal.
    if (a.dist(b) - c.dist(d)).abs() > tol.eps_geom {
        return false;
    }
    if (b.dist(c) - d.dist(a)).abs() > tol.eps_geom {
        return false;
    }
    // Right angles at every vertex.
    for i in 0..4 {
        let p = vs[(i + 3) % 4];
        let q = vs[i];
        let r = vs[(i + 1) % 4];
        match right_angle_deviation(p, q, r) {
            Some(dev) if dev <= tol.eps_angle => {}
            _ => return false,
        }
    }
    // Diagonals equal and bisect each other.
    if (a.dist(c) - b.dist(d)).abs() > tol.eps_geom {
        return false;
    }
    let m1 = (a + c).scale(0.5);
    let m2 = (b + d).scale(0.5);
    m1.dist(m2) <= tol.eps_geom
}

/// Side and diagonal metrics of a validated rectangle.
pub fn rectangle_metrics(
    r: &Rectangle,
    tol: &ToleranceContext,
) -> Result<RectangleMetrics, GeomError> {
    let [a, b, c, d] = r.vertices;
    if !is_rectangle(a, b, c, d, tol) {
        return Err(GeomError::InvalidRectangle);
    }
    let s1 = (a.dist(b) + c.dist(d)) / 2.0;
    let s2 = (b.dist(c) + d.dist(a)) / 2.0;
    let (short, long) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    Ok(RectangleMetrics {
        diagonal: (a.dist(c) + b.dist(d)) / 2.0,
        short,
        long,
        aspect: short / long,
    })
}

/// Intersection of two circles, with an `eps_geom`-wide tangency band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntersectionResult {
    Disjoint,
    Tangent(Point2),
    Two(Point2, Point2),
    Coincident,
}

impl IntersectionResult {
    /// Intersection cardinality: None encodes the coincident (infinite) case.
    pub fn count(&self) -> Option<usize> {
        match self {
            IntersectionResult::Disjoint => Some(0),
            IntersectionResult::Tangent(_) => Some(1),
            IntersectionResult::Two(_, _) => Some(2),
            IntersectionResult::Coincident => None,
        }
    }
}

/// Classifies the intersection of two circles by center distance against the
/// radius sum/difference. Tangency is a band: |dist - (r1 +- r2)| <= eps_geom.
pub fn circle_circle_intersect(
    c1: Circle,
    c2: Circle,
    tol: &ToleranceContext,
) -> IntersectionResult {
    let eps = tol.eps_geom;
    let dvec = c2.center - c1.center;
    let d = dvec.norm();
    let (r1, r2) = (c1.radius, c2.radius);

    if d <= eps && (r1 - r2).abs() <= eps {
        return IntersectionResult::Coincident;
    }
    if d > r1 + r2 + eps {
        return IntersectionResult::Disjoint;
    }
    if d < (r1 - r2).abs() - eps {
        return IntersectionResult::Disjoint; // one strictly inside the other
    }
    // External tangency band.
    if (d - (r1 + r2)).abs() <= eps {
        let p = c1.center + dvec.scale(r1 / (r1 + r2));
        return IntersectionResult::Tangent(p);
    }
    // Internal tangency band (d near |r1 - r2|, centers distinct).
    if d > eps && (d - (r1 - r2).abs()).abs() <= eps {
        let sign = if r1 >= r2 { 1.0 } else { -1.0 };
        let p = c1.center + dvec.scale(sign * r1 / d);
        return IntersectionResult::Tangent(p);
    }

    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h_sq = r1 * r1 - a * a;
    let mid = c1.center + dvec.scale(a / d);
    if h_sq <= 0.0 {
        return IntersectionResult::Tangent(mid);
    }
    let h = h_sq.sqrt();
    let off = dvec.perp().scale(h / d);
    let p1 = mid + off;
    let p2 = mid - off;
    if p1.dist(p2) <= eps {
        return IntersectionResult::Tangent(mid);
    }
    IntersectionResult::Two(p1, p2)
}

/// Distance from `p` to the closed segment [a, b].
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.dist(a + ab.scale(t))
}

/// Range of distances from `c` to points of the segment [a, b]:
/// (min, max). The max is attained at an endpoint.
pub fn segment_distance_range(c: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let dmin = point_segment_distance(c, a, b);
    let dmax = c.dist(a).max(c.dist(b));
    (dmin, dmax)
}
