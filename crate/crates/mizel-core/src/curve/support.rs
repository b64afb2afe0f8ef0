//! Tabulated support functions and the reconstruction back to boundary
//! samples. Constant-width tabulations mirror the second half of the grid
//! by exact subtraction, which keeps h(theta) + h(theta + pi) bitwise equal
//! to the width on the grid.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geom::Point2;

use super::generators::FourierCoeff;
use super::{CurveError, SampledCurve, MIN_SAMPLES};

/// Trigonometric description of a support function:
/// h(theta) = base + sum of cos/sin terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportCoeffs {
    pub base: f64,
    pub terms: Vec<FourierCoeff>,
}

impl SupportCoeffs {
    pub fn eval(&self, theta: f64) -> f64 {
        let mut h = self.base;
        for t in &self.terms {
            let kt = t.k as f64 * theta;
            h += t.cos * kt.cos() + t.sin * kt.sin();
        }
        h
    }

    fn eval_d1(&self, theta: f64) -> f64 {
        let mut h1 = 0.0;
        for t in &self.terms {
            let kf = t.k as f64;
            let kt = kf * theta;
            h1 += kf * (-t.cos * kt.sin() + t.sin * kt.cos());
        }
        h1
    }
}

/// Support function h sampled on the uniform grid theta_i = 2*pi*i/m,
/// optionally backed by its harmonic coefficients and a target width.
/// Invariants: every value positive; discrete radius of curvature
/// h + h'' positive (h'' by central second difference); when a width
/// target is present the grid identity h_i + h_{i+m/2} = width holds
/// exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportBody {
    values: Vec<f64>,
    coeffs: Option<SupportCoeffs>,
    width_target: Option<f64>,
}

impl SupportBody {
    pub fn new(values: Vec<f64>) -> Result<Self, CurveError> {
        Self::with_meta(values, None, None)
    }

    fn with_meta(
        values: Vec<f64>,
        coeffs: Option<SupportCoeffs>,
        width_target: Option<f64>,
    ) -> Result<Self, CurveError> {
        let m = values.len();
        if m < MIN_SAMPLES {
            return Err(CurveError::TooFewSamples {
                got: m,
                min: MIN_SAMPLES,
            });
        }
        let step = 2.0 * PI / m as f64;
        let step_sq = step * step;
        // Positivity first so a bad value is reported at its own index, not
        // via the curvature stencil of a neighbor.
        for (i, &h) in values.iter().enumerate() {
            if !(h > 0.0 && h.is_finite()) {
                return Err(CurveError::ConvexityViolation { index: i, value: h });
            }
        }
        for i in 0..m {
            let h = values[i];
            let prev = values[(i + m - 1) % m];
            let next = values[(i + 1) % m];
            let radius = h + (prev - 2.0 * h + next) / step_sq;
            if radius <= 0.0 {
                return Err(CurveError::ConvexityViolation {
                    index: i,
                    value: radius,
                });
            }
        }
        if let Some(d) = width_target {
            if m % 2 != 0 {
                return Err(CurveError::BadParameter(
                    "a width target needs an even support grid".into(),
                ));
            }
            for i in 0..m / 2 {
                if values[i] + values[i + m / 2] != d {
                    return Err(CurveError::BadParameter(format!(
                        "width identity broken at grid index {i}"
                    )));
                }
            }
        }
        Ok(SupportBody {
            values,
            coeffs,
            width_target,
        })
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self, CurveError> {
        let values = (0..m).map(|i| f(2.0 * PI * i as f64 / m as f64)).collect();
        Self::new(values)
    }

    /// Tabulates a constant-width support function: the first half of the
    /// grid comes from `f`, the second half is `width - f` so the grid
    /// width identity holds bitwise.
    pub fn constant_width_tabulation(
        width: f64,
        m: usize,
        f: impl Fn(f64) -> f64,
    ) -> Result<Self, CurveError> {
        Self::constant_width_with_coeffs(width, m, f, None)
    }

    fn constant_width_with_coeffs(
        width: f64,
        m: usize,
        f: impl Fn(f64) -> f64,
        coeffs: Option<SupportCoeffs>,
    ) -> Result<Self, CurveError> {
        if m % 2 != 0 {
            return Err(CurveError::BadParameter(format!(
                "constant-width tabulation needs an even grid, got m={m}"
            )));
        }
        let half = m / 2;
        let mut values = vec![0.0; m];
        for i in 0..half {
            values[i] = f(2.0 * PI * i as f64 / m as f64);
        }
        for i in 0..half {
            values[half + i] = width - values[i];
        }
        Self::with_meta(values, coeffs, Some(width))
    }

    #[inline]
    pub fn grid_len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn width_target(&self) -> Option<f64> {
        self.width_target
    }

    #[inline]
    pub fn coeffs(&self) -> Option<&SupportCoeffs> {
        self.coeffs.as_ref()
    }

    #[inline]
    pub fn angle(&self, i: usize) -> f64 {
        2.0 * PI * i as f64 / self.values.len() as f64
    }

    /// Width sample h_i + h_{i + m/2}; grid must be even.
    pub fn width_at(&self, i: usize) -> Result<f64, CurveError> {
        let m = self.values.len();
        if m % 2 != 0 {
            return Err(CurveError::BadParameter(
                "width sampling needs an even support grid".into(),
            ));
        }
        Ok(self.values[i % m] + self.values[(i + m / 2) % m])
    }

    pub fn widths(&self) -> Result<Vec<f64>, CurveError> {
        (0..self.values.len() / 2)
            .map(|i| self.width_at(i))
            .collect()
    }

    /// Cauchy integral of the support function: perimeter = ∮ h dtheta,
    /// evaluated by the grid trapezoid rule (exact for the grid).
    pub fn cauchy_perimeter(&self) -> f64 {
        let m = self.values.len() as f64;
        self.values.iter().sum::<f64>() * (2.0 * PI / m)
    }
}

/// Support body of the trigonometric constant-width family
/// h(theta) = d/2 + odd harmonics, carrying its coefficients.
pub fn fourier_support_body(
    d: f64,
    coeffs: &[FourierCoeff],
    m: usize,
) -> Result<SupportBody, CurveError> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(CurveError::BadParameter(format!(
            "width must be positive and finite, got {d}"
        )));
    }
    for c in coeffs {
        if c.k < 3 || c.k % 2 == 0 {
            return Err(CurveError::BadParameter(format!(
                "harmonic order must be odd and at least 3, got {}",
                c.k
            )));
        }
    }
    let sc = SupportCoeffs {
        base: d / 2.0,
        terms: coeffs.to_vec(),
    };
    let eval = sc.clone();
    SupportBody::constant_width_with_coeffs(d, m, move |theta| eval.eval(theta), Some(sc))
}

fn boundary_sample(h: f64, h1: f64, theta: f64) -> (Point2, Point2) {
    let (s, c) = theta.sin_cos();
    let u = Point2::new(c, s);
    let u_perp = u.perp();
    // Boundary point of a support parametrization: h*u + h'*u_perp, with
    // velocity (h + h'')*u_perp, so u_perp is the unit tangent.
    (u.scale(h) + u_perp.scale(h1), u_perp)
}

/// Reconstructs n boundary samples from a support body. On-grid values use
/// the tabulation with central-difference h'; off-grid resolutions require
/// harmonic coefficients (tabulated-only bodies cannot be resampled).
pub fn support_to_curve(body: &SupportBody, n: usize) -> Result<SampledCurve, CurveError> {
    let m = body.grid_len();
    let mut points = Vec::with_capacity(n);
    let mut tangents = Vec::with_capacity(n);
    if n == m {
        let step = 2.0 * PI / m as f64;
        for i in 0..m {
            let h = body.value(i);
            let h1 = (body.value((i + 1) % m) - body.value((i + m - 1) % m)) / (2.0 * step);
            let (p, t) = boundary_sample(h, h1, body.angle(i));
            points.push(p);
            tangents.push(t);
        }
    } else {
        let Some(coeffs) = body.coeffs() else {
            return Err(CurveError::BadParameter(format!(
                "cannot resample a tabulated-only support body from m={m} to n={n}"
            )));
        };
        for i in 0..n {
            let theta = 2.0 * PI * i as f64 / n as f64;
            let (p, t) = boundary_sample(coeffs.eval(theta), coeffs.eval_d1(theta), theta);
            points.push(p);
            tangents.push(t);
        }
    }
    SampledCurve::from_points_with_tangents(points, tangents)
}

/// Largest absolute mismatch between the tabulated support values and the
/// support function of the reconstructed sample polygon, over the grid
/// directions. Near zero when the tabulation resolves the body.
pub fn recomputed_support_deviation(body: &SupportBody, curve: &SampledCurve) -> f64 {
    let m = body.grid_len();
    let mut worst: f64 = 0.0;
    for i in 0..m {
        let theta = body.angle(i);
        let (s, c) = theta.sin_cos();
        let u = Point2::new(c, s);
        let support = curve
            .points()
            .iter()
            .map(|p| p.dot(u))
            .fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max((support - body.value(i)).abs());
    }
    worst
}
