//! Analytic curve generators. Every generator emits ccw samples with exact
//! unit tangents, so downstream frame consumers never pay discretization
//! error at the samples themselves.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geom::Point2;

use super::{CurveError, SampledCurve, MIN_GENERATOR_SAMPLES};

fn check_samples(n: usize) -> Result<(), CurveError> {
    if n < MIN_GENERATOR_SAMPLES {
        return Err(CurveError::TooFewSamples {
            got: n,
            min: MIN_GENERATOR_SAMPLES,
        });
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<(), CurveError> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(CurveError::BadParameter(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

/// Circle of the given radius centered at the origin, sampled uniformly
/// in angle.
pub fn generate_circle(radius: f64, n: usize) -> Result<SampledCurve, CurveError> {
    check_positive("radius", radius)?;
    check_samples(n)?;
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        let (s, c) = t.sin_cos();
        points.push(Point2::new(radius * c, radius * s));
        tangents.push(Point2::new(-s, c));
    }
    SampledCurve::from_points_with_tangents(points, tangents)
}

/// Axis-aligned ellipse with semi-axes `a` (x) and `b` (y), sampled
/// uniformly in the angular parameter.
pub fn generate_ellipse(a: f64, b: f64, n: usize) -> Result<SampledCurve, CurveError> {
    check_positive("semi-axis a", a)?;
    check_positive("semi-axis b", b)?;
    check_samples(n)?;
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        let (s, c) = t.sin_cos();
        points.push(Point2::new(a * c, b * s));
        tangents.push(Point2::new(-a * s, b * c).normalize());
    }
    SampledCurve::from_points_with_tangents(points, tangents)
}

/// Curvature of the ellipse (a cos t, b sin t) at parameter t.
pub fn ellipse_curvature(a: f64, b: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    a * b / (a * a * s * s + b * b * c * c).powf(1.5)
}

/// Odd-k circular-arc polygon of constant width `d` (k >= 3, odd): the
/// boundary is k arcs of radius d, each centered on the far vertex of a
/// regular k-gon. Samples are uniform in arclength, starting at a vertex.
pub fn generate_reuleaux(k: usize, d: f64, n: usize) -> Result<SampledCurve, CurveError> {
    if k < 3 || k % 2 == 0 {
        return Err(CurveError::BadParameter(format!(
            "arc count must be odd and at least 3, got {k}"
        )));
    }
    check_positive("width", d)?;
    check_samples(n)?;

    let circumradius = d / (2.0 * (PI / (2.0 * k as f64)).cos());
    let vertices: Vec<Point2> = (0..k)
        .map(|j| {
            let phi = PI / 2.0 + 2.0 * PI * j as f64 / k as f64;
            let (s, c) = phi.sin_cos();
            Point2::new(circumradius * c, circumradius * s)
        })
        .collect();
    let m = (k - 1) / 2;
    // Arc j runs ccw from vertex j+m to vertex j+m+1 around center j,
    // spanning an angle of pi/k at radius d.
    let start_angles: Vec<f64> = (0..k)
        .map(|j| {
            let from = vertices[(j + m) % k] - vertices[j];
            from.y.atan2(from.x)
        })
        .collect();

    let total = PI * d;
    let arc_len = total / k as f64;
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    for t in 0..n {
        let s_global = total * t as f64 / n as f64;
        let mut j = ((s_global / arc_len) as usize).min(k - 1);
        let mut s_local = s_global - j as f64 * arc_len;
        if s_local >= arc_len {
            // Guards against a roundoff spill at arc boundaries.
            j = (j + 1) % k;
            s_local = 0.0;
        }
        let angle = start_angles[j] + s_local / d;
        let (sa, ca) = angle.sin_cos();
        points.push(vertices[j] + Point2::new(d * ca, d * sa));
        tangents.push(Point2::new(-sa, ca));
    }
    SampledCurve::from_points_with_tangents(points, tangents)
}

/// One trigonometric term of a support-function perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierCoeff {
    /// Harmonic order; must be odd and >= 3 to preserve constant width.
    pub k: u32,
    pub cos: f64,
    pub sin: f64,
}

impl FourierCoeff {
    pub fn cosine(k: u32, amplitude: f64) -> Self {
        FourierCoeff {
            k,
            cos: amplitude,
            sin: 0.0,
        }
    }
}

fn check_coeffs(d: f64, coeffs: &[FourierCoeff]) -> Result<(), CurveError> {
    check_positive("width", d)?;
    for c in coeffs {
        if c.k < 3 || c.k % 2 == 0 {
            return Err(CurveError::BadParameter(format!(
                "harmonic order must be odd and at least 3, got {}",
                c.k
            )));
        }
        if !(c.cos.is_finite() && c.sin.is_finite()) {
            return Err(CurveError::BadParameter(format!(
                "non-finite coefficient on harmonic {}",
                c.k
            )));
        }
    }
    Ok(())
}

/// Support perturbation sum at angle theta.
pub(crate) fn fourier_h(d: f64, coeffs: &[FourierCoeff], theta: f64) -> f64 {
    let mut h = d / 2.0;
    for c in coeffs {
        let kt = c.k as f64 * theta;
        h += c.cos * kt.cos() + c.sin * kt.sin();
    }
    h
}

fn fourier_h1(coeffs: &[FourierCoeff], theta: f64) -> f64 {
    let mut h1 = 0.0;
    for c in coeffs {
        let kf = c.k as f64;
        let kt = kf * theta;
        h1 += kf * (-c.cos * kt.sin() + c.sin * kt.cos());
    }
    h1
}

fn fourier_h2(coeffs: &[FourierCoeff], theta: f64) -> f64 {
    let mut h2 = 0.0;
    for c in coeffs {
        let kf = c.k as f64;
        let kt = kf * theta;
        h2 -= kf * kf * (c.cos * kt.cos() + c.sin * kt.sin());
    }
    h2
}

/// Constant-width body from a trigonometric support function
/// h(theta) = d/2 + sum of odd harmonics. Odd orders keep
/// h(theta) + h(theta + pi) = d identically; convexity (h + h'' > 0) is
/// verified analytically on the sample grid before emission.
pub fn generate_fourier_cw(
    d: f64,
    coeffs: &[FourierCoeff],
    n: usize,
) -> Result<SampledCurve, CurveError> {
    check_coeffs(d, coeffs)?;
    check_samples(n)?;
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    for i in 0..n {
        let theta = 2.0 * PI * i as f64 / n as f64;
        let h = fourier_h(d, coeffs, theta);
        let radius_of_curvature = h + fourier_h2(coeffs, theta);
        if h <= 0.0 || radius_of_curvature <= 0.0 {
            return Err(CurveError::ConvexityViolation {
                index: i,
                value: radius_of_curvature,
            });
        }
        let h1 = fourier_h1(coeffs, theta);
        let (s, c) = theta.sin_cos();
        let u = Point2::new(c, s);
        let u_perp = u.perp();
        // Boundary point of a support parametrization: h*u + h'*u_perp,
        // with velocity (h + h'')*u_perp, so u_perp is the unit tangent.
        points.push(u.scale(h) + u_perp.scale(h1));
        tangents.push(u_perp);
    }
    SampledCurve::from_points_with_tangents(points, tangents)
}
