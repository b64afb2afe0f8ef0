//! Closed sampled curves with cached tangent frames, plus the analyses that
//! operate on them directly: perimeter, rotating-caliper width profiles, and
//! exact point-to-polyline distance. Plain-text interchange lives here too.

pub mod generators;
pub mod support;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{point_segment_distance, Point2, ToleranceContext};

/// Minimum sample count a curve must carry to be usable at all.
pub const MIN_SAMPLES: usize = 8;
/// Minimum sample count the analytic generators will emit.
pub const MIN_GENERATOR_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("consecutive duplicate sample at index {index}")]
    DuplicatePoint { index: usize },
    #[error("support function fails convexity at grid index {index} (h + h'' = {value})")]
    ConvexityViolation { index: usize, value: f64 },
    #[error("polyline turns backward at vertex {index} by {turn} rad")]
    NotConvex { index: usize, turn: f64 },
    #[error("malformed curve table: {0}")]
    ParseError(String),
}

/// Local frame at a sample: position, unit tangent in traversal direction,
/// and the inner normal (tangent rotated +90 deg, pointing into the region
/// for a ccw curve).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentFrame {
    pub point: Point2,
    pub tangent: Point2,
    pub inner_normal: Point2,
}

/// Closest approach of a query point to the curve polyline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearestApproach {
    pub distance: f64,
    /// Index of the segment (i, i+1 mod n) realizing the minimum.
    pub segment: usize,
    pub point_on_curve: Point2,
}

/// A closed curve given by samples in counterclockwise order. The closing
/// segment (last, first) is implicit. Tangents are unit vectors in traversal
/// direction; cumulative chord length provides the parametrization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    points: Vec<Point2>,
    tangents: Vec<Point2>,
    /// params[i] = chord length accumulated from sample 0 to sample i.
    params: Vec<f64>,
    total_length: f64,
    max_spacing: f64,
}

/// Orientation-preserving (or reflecting) similarity of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub scale: f64,
    pub rotation: f64,
    pub translation: Point2,
    pub reflect: bool,
}

impl Similarity {
    pub fn scaling(scale: f64) -> Self {
        Similarity {
            scale,
            rotation: 0.0,
            translation: Point2::ORIGIN,
            reflect: false,
        }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let m = if self.reflect {
            Point2::new(p.x, -p.y)
        } else {
            p
        };
        m.rotate(self.rotation).scale(self.scale) + self.translation
    }

    fn apply_direction(&self, v: Point2) -> Point2 {
        let m = if self.reflect {
            Point2::new(v.x, -v.y)
        } else {
            v
        };
        m.rotate(self.rotation)
    }
}

fn signed_area2(points: &[Point2]) -> f64 {
    let n = points.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = points[i];
        let q = points[(i + 1) % n];
        acc += p.cross(q);
    }
    acc
}

fn cumulative_params(points: &[Point2]) -> (Vec<f64>, f64, f64) {
    let n = points.len();
    let mut params = Vec::with_capacity(n);
    let mut acc = 0.0;
    let mut max_spacing: f64 = 0.0;
    for i in 0..n {
        params.push(acc);
        let step = points[i].dist(points[(i + 1) % n]);
        max_spacing = max_spacing.max(step);
        acc += step;
    }
    (params, acc, max_spacing)
}

impl SampledCurve {
    /// Builds a curve from bare samples. Orientation is normalized to ccw;
    /// tangents are estimated by cyclic central differences. A final sample
    /// exactly repeating the first is dropped.
    pub fn from_points(mut points: Vec<Point2>) -> Result<Self, CurveError> {
        if points.len() >= 2 && points[0] == *points.last().unwrap() {
            points.pop();
        }
        let n = points.len();
        if n < MIN_SAMPLES {
            return Err(CurveError::TooFewSamples {
                got: n,
                min: MIN_SAMPLES,
            });
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(CurveError::BadParameter(format!(
                    "non-finite coordinate at sample {i}"
                )));
            }
        }
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(CurveError::DuplicatePoint { index: i });
            }
        }
        let area2 = signed_area2(&points);
        if area2 == 0.0 {
            return Err(CurveError::BadParameter(
                "samples enclose zero signed area".into(),
            ));
        }
        if area2 < 0.0 {
            points.reverse();
            points.rotate_right(1); // keep the original first sample first
        }
        let mut tangents = Vec::with_capacity(n);
        for i in 0..n {
            let prev = points[(i + n - 1) % n];
            let next = points[(i + 1) % n];
            let chord = next - prev;
            let len = chord.norm();
            if len == 0.0 {
                return Err(CurveError::BadParameter(format!(
                    "cusp at sample {i}: neighbors coincide"
                )));
            }
            tangents.push(chord.scale(1.0 / len));
        }
        Ok(Self::assemble(points, tangents))
    }

    /// Generator entry point: samples already ccw with analytic unit tangents.
    pub(crate) fn from_points_with_tangents(
        points: Vec<Point2>,
        tangents: Vec<Point2>,
    ) -> Result<Self, CurveError> {
        let n = points.len();
        if n < MIN_SAMPLES {
            return Err(CurveError::TooFewSamples {
                got: n,
                min: MIN_SAMPLES,
            });
        }
        assert_eq!(tangents.len(), n);
        debug_assert!(signed_area2(&points) > 0.0);
        debug_assert!(tangents.iter().all(|t| (t.norm() - 1.0).abs() < 1e-9));
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(CurveError::DuplicatePoint { index: i });
            }
        }
        Ok(Self::assemble(points, tangents))
    }

    fn assemble(points: Vec<Point2>, tangents: Vec<Point2>) -> Self {
        let (params, total_length, max_spacing) = cumulative_params(&points);
        SampledCurve {
            points,
            tangents,
            params,
            total_length,
            max_spacing,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false // a validated curve always has samples
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point2 {
        self.points[i]
    }

    #[inline]
    pub fn tangent(&self, i: usize) -> Point2 {
        self.tangents[i]
    }

    /// Inner normal at sample i: the tangent rotated +90 deg.
    #[inline]
    pub fn inner_normal(&self, i: usize) -> Point2 {
        self.tangents[i].perp()
    }

    #[inline]
    pub fn param(&self, i: usize) -> f64 {
        self.params[i]
    }

    #[inline]
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    #[inline]
    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    /// Largest chord gap between consecutive samples (closing edge included).
    #[inline]
    pub fn max_spacing(&self) -> f64 {
        self.max_spacing
    }

    /// Endpoints of segment i: (p_i, p_{i+1 mod n}).
    #[inline]
    pub fn segment(&self, i: usize) -> (Point2, Point2) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    pub fn frame(&self, i: usize) -> TangentFrame {
        TangentFrame {
            point: self.points[i],
            tangent: self.tangents[i],
            inner_normal: self.inner_normal(i),
        }
    }

    /// Exact closest approach of `p` to the closed polyline.
    pub fn nearest(&self, p: Point2) -> NearestApproach {
        let n = self.points.len();
        let mut best = NearestApproach {
            distance: f64::INFINITY,
            segment: 0,
            point_on_curve: self.points[0],
        };
        for i in 0..n {
            let (a, b) = self.segment(i);
            let d = point_segment_distance(p, a, b);
            if d < best.distance {
                let ab = b - a;
                let t = if ab.norm_sq() == 0.0 {
                    0.0
                } else {
                    ((p - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0)
                };
                best = NearestApproach {
                    distance: d,
                    segment: i,
                    point_on_curve: a + ab.scale(t),
                };
            }
        }
        best
    }

    /// Convenience wrapper over [`SampledCurve::nearest`].
    #[inline]
    pub fn nearest_distance(&self, p: Point2) -> f64 {
        self.nearest(p).distance
    }

    /// Axis-aligned bounding box as (min, max) corners.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = self.points[0];
        let mut hi = self.points[0];
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Image of the curve under a similarity. Reflections reverse traversal;
    /// the output is re-normalized to ccw with the same starting sample.
    pub fn transformed(&self, map: &Similarity) -> SampledCurve {
        assert!(map.scale > 0.0 && map.scale.is_finite());
        let n = self.points.len();
        let mapped: Vec<Point2> = self.points.iter().map(|&p| map.apply(p)).collect();
        let mapped_tangents: Vec<Point2> = self
            .tangents
            .iter()
            .map(|&t| map.apply_direction(t))
            .collect();
        let (points, tangents) = if map.reflect {
            let mut pts = Vec::with_capacity(n);
            let mut tgs = Vec::with_capacity(n);
            for i in 0..n {
                let src = (n - i) % n;
                pts.push(mapped[src]);
                tgs.push(-mapped_tangents[src]);
            }
            (pts, tgs)
        } else {
            (mapped, mapped_tangents)
        };
        Self::assemble(points, tangents)
    }

    /// Serializes to the plain-text table format:
    /// a `# curve n=<N> closed=1 ccw=1` header followed by `x y` rows.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# curve n={} closed=1 ccw=1", self.points.len()).unwrap();
        for p in &self.points {
            writeln!(out, "{} {}", p.x, p.y).unwrap();
        }
        out
    }

    /// Parses the plain-text table format. Tangents are re-estimated from
    /// the samples; a `ccw=0` flag is honored by re-orientation.
    pub fn from_table(text: &str) -> Result<Self, CurveError> {
        let mut lines = text.lines();
        let header = loop {
            match lines.next() {
                Some(l) if l.trim().is_empty() => continue,
                Some(l) => break l.trim(),
                None => return Err(CurveError::ParseError("empty input".into())),
            }
        };
        if !header.starts_with("# curve") {
            return Err(CurveError::ParseError(format!(
                "expected '# curve' header, got {header:?}"
            )));
        }
        let mut declared_n = None;
        for field in header.trim_start_matches("# curve").split_whitespace() {
            match field.split_once('=') {
                Some(("n", v)) => {
                    declared_n =
                        Some(v.parse::<usize>().map_err(|_| {
                            CurveError::ParseError(format!("bad sample count {v:?}"))
                        })?);
                }
                Some(("closed", "1")) => {}
                Some(("closed", v)) => {
                    return Err(CurveError::ParseError(format!(
                        "only closed curves are supported, got closed={v}"
                    )));
                }
                Some(("ccw", _)) => {} // orientation re-derived from samples
                _ => {
                    return Err(CurveError::ParseError(format!(
                        "unrecognized header field {field:?}"
                    )));
                }
            }
        }
        let mut points = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (xs, ys) = match (it.next(), it.next(), it.next()) {
                (Some(x), Some(y), None) => (x, y),
                _ => {
                    return Err(CurveError::ParseError(format!(
                        "line {}: expected 'x y'",
                        lineno + 2
                    )));
                }
            };
            let x: f64 = xs.parse().map_err(|_| {
                CurveError::ParseError(format!("line {}: bad x {xs:?}", lineno + 2))
            })?;
            let y: f64 = ys.parse().map_err(|_| {
                CurveError::ParseError(format!("line {}: bad y {ys:?}", lineno + 2))
            })?;
            let p = Point2::try_new(x, y)
                .map_err(|e| CurveError::ParseError(format!("line {}: {e}", lineno + 2)))?;
            points.push(p);
        }
        if let Some(n) = declared_n {
            if n != points.len() {
                return Err(CurveError::ParseError(format!(
                    "header declares {} samples, table has {}",
                    n,
                    points.len()
                )));
            }
        }
        Self::from_points(points)
    }
}

/// Perimeter of the sample polygon (cumulative chord length).
#[inline]
pub fn perimeter(curve: &SampledCurve) -> f64 {
    curve.total_length()
}

/// Frame at sample i; see [`TangentFrame`].
#[inline]
pub fn tangent_normal_at(curve: &SampledCurve, i: usize) -> TangentFrame {
    curve.frame(i)
}

/// Exact distance from `p` to the curve polyline.
#[inline]
pub fn nearest_distance(curve: &SampledCurve, p: Point2) -> f64 {
    curve.nearest_distance(p)
}

/// Width samples over directions theta_j = j*pi/m, j = 0..m.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthProfile {
    pub values: Vec<f64>,
}

impl WidthProfile {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Outcome of a constant-width test against a reference width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthReport {
    pub min_width: f64,
    pub max_width: f64,
    /// Width the profile was compared against (given, or the profile mean).
    pub reference: f64,
    pub max_deviation: f64,
    pub is_constant_width: bool,
}

fn ensure_convex(curve: &SampledCurve, tol: &ToleranceContext) -> Result<(), CurveError> {
    let n = curve.len();
    for i in 0..n {
        let prev = curve.point((i + n - 1) % n);
        let here = curve.point(i);
        let next = curve.point((i + 1) % n);
        let e0 = here - prev;
        let e1 = next - here;
        let turn = e0.cross(e1).atan2(e0.dot(e1));
        if turn < -tol.eps_angle {
            return Err(CurveError::NotConvex { index: i, turn });
        }
    }
    Ok(())
}

/// Support argmax of `points` in direction `d` by exhaustive scan.
fn argmax_support(points: &[Point2], d: Point2) -> usize {
    let mut best = 0;
    let mut best_v = points[0].dot(d);
    for (i, p) in points.iter().enumerate().skip(1) {
        let v = p.dot(d);
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    best
}

/// Advances a support pointer while the next vertex is strictly better.
/// Falls back to a full scan if the climb fails to settle (defensive; the
/// climb terminates for any convex sample set).
fn advance_support(points: &[Point2], mut i: usize, d: Point2) -> usize {
    let n = points.len();
    let mut steps = 0;
    loop {
        let next = (i + 1) % n;
        if points[next].dot(d) > points[i].dot(d) {
            i = next;
            steps += 1;
            if steps > n {
                return argmax_support(points, d);
            }
        } else {
            return i;
        }
    }
}

/// Width of the sample hull in `m` directions (theta_j = j*pi/m), computed
/// by rotating calipers. Rejects curves with a concave turn beyond
/// `tol.eps_angle`.
pub fn width_function(
    curve: &SampledCurve,
    m: usize,
    tol: &ToleranceContext,
) -> Result<WidthProfile, CurveError> {
    if m < 4 {
        return Err(CurveError::BadParameter(format!(
            "need at least 4 width directions, got {m}"
        )));
    }
    ensure_convex(curve, tol)?;
    let points = curve.points();
    let d0 = Point2::new(1.0, 0.0);
    let mut hi = argmax_support(points, d0);
    let mut lo = argmax_support(points, -d0);
    let mut values = Vec::with_capacity(m);
    for j in 0..m {
        let theta = j as f64 * std::f64::consts::PI / m as f64;
        let d = Point2::new(theta.cos(), theta.sin());
        hi = advance_support(points, hi, d);
        lo = advance_support(points, lo, -d);
        values.push(points[hi].dot(d) - points[lo].dot(d));
    }
    Ok(WidthProfile { values })
}

/// Compares the width profile against `reference` (or the profile mean when
/// absent). `dev_tol` bounds the accepted absolute deviation.
pub fn constant_width_check(
    curve: &SampledCurve,
    m: usize,
    reference: Option<f64>,
    dev_tol: f64,
    tol: &ToleranceContext,
) -> Result<WidthReport, CurveError> {
    if !(dev_tol > 0.0 && dev_tol.is_finite()) {
        return Err(CurveError::BadParameter(
            "deviation tolerance must be positive".into(),
        ));
    }
    let profile = width_function(curve, m, tol)?;
    let reference = reference.unwrap_or_else(|| profile.mean());
    let max_deviation = profile
        .values
        .iter()
        .map(|w| (w - reference).abs())
        .fold(0.0, f64::max);
    Ok(WidthReport {
        min_width: profile.min(),
        max_width: profile.max(),
        reference,
        max_deviation,
        is_constant_width: max_deviation <= dev_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::generators::{generate_circle, generate_ellipse};
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn raw_points_are_normalized_to_ccw() {
        // Clockwise octagon input.
        let n = 16;
        let pts: Vec<Point2> = (0..n)
            .map(|i| {
                let t = -2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        let c = SampledCurve::from_points(pts).unwrap();
        assert!(signed_area2(c.points()) > 0.0);
        // Starting sample preserved.
        assert_abs_diff_eq!(c.point(0).x, 1.0, epsilon = 1e-15);
        // Estimated tangent at the start of a ccw circle points up.
        assert!(c.tangent(0).y > 0.9);
        // Inner normal points toward the center.
        assert!(c.inner_normal(0).x < -0.9);
    }

    #[test]
    fn rejects_too_few_and_duplicate_samples() {
        let tri = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(matches!(
            SampledCurve::from_points(tri),
            Err(CurveError::TooFewSamples { got: 3, min: 8 })
        ));

        let mut pts: Vec<Point2> = (0..12)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 12.0;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        pts[5] = pts[4];
        assert!(matches!(
            SampledCurve::from_points(pts),
            Err(CurveError::DuplicatePoint { index: 4 })
        ));
    }

    #[test]
    fn params_accumulate_chord_lengths() {
        let c = generate_circle(1.0, 64).unwrap();
        let step = 2.0 * (std::f64::consts::PI / 64.0).sin();
        for i in 0..c.len() {
            assert_abs_diff_eq!(c.param(i), step * i as f64, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(c.total_length(), step * 64.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.max_spacing(), step, epsilon = 1e-15);
    }

    #[test]
    fn circle_perimeter_approaches_two_pi_r() {
        let c = generate_circle(2.0, 1 << 12).unwrap();
        let expect = 4.0 * std::f64::consts::PI;
        assert!((perimeter(&c) - expect).abs() / expect < 1e-6);
    }

    #[test]
    fn nearest_distance_on_circle_matches_radius_offset() {
        let c = generate_circle(1.0, 4096).unwrap();
        // Far outside: polyline distance ~ |r_query - 1|.
        let d = c.nearest_distance(Point2::new(3.0, 0.0));
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-6);
        // Center: distance ~ apothem of the sample polygon.
        let apothem = (std::f64::consts::PI / 4096.0).cos();
        assert_abs_diff_eq!(c.nearest_distance(Point2::ORIGIN), apothem, epsilon = 1e-12);
        // On a sample: exactly zero.
        assert_eq!(c.nearest_distance(c.point(17)), 0.0);
    }

    #[test]
    fn nearest_reports_segment_and_foot() {
        let c = generate_circle(1.0, 64).unwrap();
        let q = Point2::new(1.5, 0.01);
        let hit = c.nearest(q);
        let (a, b) = c.segment(hit.segment);
        let via_segment = point_segment_distance(q, a, b);
        assert_eq!(hit.distance, via_segment);
        assert_abs_diff_eq!(q.dist(hit.point_on_curve), hit.distance, epsilon = 1e-15);
    }

    #[test]
    fn width_profile_matches_brute_force_support_scan() {
        let t = ToleranceContext::for_scale(4.0);
        for curve in [
            generate_circle(1.0, 257).unwrap(),
            generate_ellipse(2.0, 1.0, 311).unwrap(),
        ] {
            let m = 180;
            let prof = width_function(&curve, m, &t).unwrap();
            for j in 0..m {
                let theta = j as f64 * std::f64::consts::PI / m as f64;
                let d = Point2::new(theta.cos(), theta.sin());
                let hi = curve
                    .points()
                    .iter()
                    .map(|p| p.dot(d))
                    .fold(f64::MIN, f64::max);
                let lo = curve
                    .points()
                    .iter()
                    .map(|p| p.dot(d))
                    .fold(f64::MAX, f64::min);
                assert_abs_diff_eq!(prof.values[j], hi - lo, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ellipse_width_extremes_hit_axes() {
        let t = ToleranceContext::for_scale(4.0);
        let e = generate_ellipse(2.0, 1.0, 4096).unwrap();
        let prof = width_function(&e, 720, &t).unwrap();
        assert_abs_diff_eq!(prof.max(), 4.0, epsilon = 1e-4);
        assert_abs_diff_eq!(prof.min(), 2.0, epsilon = 1e-4);
    }

    #[test]
    fn width_rejects_nonconvex_polyline() {
        let t = ToleranceContext::for_scale(2.0);
        // A dodecagon with one vertex pushed well inside.
        let mut pts: Vec<Point2> = (0..12)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / 12.0;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        pts[3] = pts[3].scale(0.4);
        let c = SampledCurve::from_points(pts).unwrap();
        assert!(matches!(
            width_function(&c, 90, &t),
            Err(CurveError::NotConvex { .. })
        ));
    }

    #[test]
    fn constant_width_verdicts() {
        let t = ToleranceContext::for_scale(2.0);
        let c = generate_circle(0.5, 2048).unwrap();
        let rep = constant_width_check(&c, 360, Some(1.0), 1e-4, &t).unwrap();
        assert!(rep.is_constant_width, "deviation {}", rep.max_deviation);

        let e = generate_ellipse(2.0, 1.0, 2048).unwrap();
        let rep = constant_width_check(&e, 360, None, 1e-3, &t).unwrap();
        assert!(!rep.is_constant_width);
        assert!(rep.max_deviation > 0.9);
    }

    #[test]
    fn table_round_trip_is_exact() {
        let c = generate_ellipse(1.5, 1.0, 128).unwrap();
        let text = c.to_table();
        let back = SampledCurve::from_table(&text).unwrap();
        assert_eq!(back.points(), c.points());
        let again = SampledCurve::from_table(&back.to_table()).unwrap();
        assert_eq!(again.points(), back.points());
    }

    #[test]
    fn table_parser_rejects_malformed_input() {
        assert!(SampledCurve::from_table("").is_err());
        assert!(SampledCurve::from_table("1 2\n3 4\n").is_err());
        assert!(SampledCurve::from_table("# curve n=3 closed=1 ccw=1\n1 2\n").is_err());
        assert!(
            SampledCurve::from_table("# curve n=1 closed=0 ccw=1\n1 2\n").is_err(),
            "open chains are rejected"
        );
    }

    #[test]
    fn transform_round_trips_and_preserves_orientation() {
        let c = generate_ellipse(1.5, 1.0, 256).unwrap();
        let fwd = Similarity {
            scale: 2.0,
            rotation: 0.7,
            translation: Point2::new(3.0, -1.0),
            reflect: false,
        };
        let moved = c.transformed(&fwd);
        assert!(signed_area2(moved.points()) > 0.0);
        for i in 0..c.len() {
            // Tangents rotate with the map.
            let expect = c.tangent(i).rotate(0.7);
            assert_abs_diff_eq!(moved.tangent(i).x, expect.x, epsilon = 1e-12);
            assert_abs_diff_eq!(moved.tangent(i).y, expect.y, epsilon = 1e-12);
        }

        let refl = Similarity {
            scale: 1.0,
            rotation: 0.0,
            translation: Point2::ORIGIN,
            reflect: true,
        };
        let mirrored = c.transformed(&refl);
        assert!(signed_area2(mirrored.points()) > 0.0);
        assert_eq!(mirrored.len(), c.len());
        // Same sample set as a set: index 0 is shared, the rest reverse.
        assert_abs_diff_eq!(mirrored.point(0).x, c.point(0).x, epsilon = 1e-15);
        let j = 10;
        let src = c.point(c.len() - j);
        assert_abs_diff_eq!(mirrored.point(j).x, src.x, epsilon = 1e-15);
        assert_abs_diff_eq!(mirrored.point(j).y, -src.y, epsilon = 1e-15);
    }

    #[test]
    fn pure_scaling_doubles_lengths_exactly() {
        let c = generate_circle(1.0, 128).unwrap();
        let doubled = c.transformed(&Similarity::scaling(2.0));
        for i in 0..c.len() {
            assert_eq!(doubled.param(i), 2.0 * c.param(i));
        }
        assert_eq!(doubled.total_length(), 2.0 * c.total_length());
        assert_eq!(doubled.max_spacing(), 2.0 * c.max_spacing());
    }
}
