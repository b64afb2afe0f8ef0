//! Tangent-disk classification. At each curve sample x, place the disk of
//! diameter d tangent to the curve at x on the inner-normal side, then sort
//! the arclength neighborhood of x into one of five classes: entirely
//! inside the open disk (A), entirely outside the closed disk (B), mixed
//! sides left/right (AB, BA), or coinciding with the disk boundary (C).
//! The circle of diameter d is the fixed point: every sample classifies C.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::SampledCurve;
use crate::geom::Circle;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassError {
    #[error("neighborhood window covers only {got} samples on one side; need at least {min}")]
    WindowTooSmall { got: usize, min: usize },
    #[error("invalid classification parameter: {0}")]
    BadParameter(String),
}

/// Classification outcome for one curve sample. UNRESOLVED is an explicit
/// verdict: the sampled neighborhood did not decide a class, typically
/// within a window of a curvature crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointClass {
    A,
    B,
    AB,
    BA,
    C,
    #[serde(rename = "UNRESOLVED")]
    Unresolved,
}

impl PointClass {
    /// Mirror image: reflections reverse traversal, swapping AB and BA.
    pub fn mirrored(self) -> PointClass {
        match self {
            PointClass::AB => PointClass::BA,
            PointClass::BA => PointClass::AB,
            other => other,
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointClass::A => "A",
            PointClass::B => "B",
            PointClass::AB => "AB",
            PointClass::BA => "BA",
            PointClass::C => "C",
            PointClass::Unresolved => "UNRESOLVED",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationParams {
    /// Tangent disk diameter.
    pub d: f64,
    /// Arclength half-width of the neighborhood examined on each side.
    pub eps_nbhd: f64,
    /// Dead band around the disk boundary: samples within this distance
    /// count as "on" the disk (the C test); side tests are strict beyond it.
    pub arc_match_tol: f64,
}

impl ClassificationParams {
    /// Defaults for a sampled curve: an 8-sample window and a boundary band
    /// at relative machine-noise scale.
    pub fn for_curve(curve: &SampledCurve, d: f64) -> ClassificationParams {
        ClassificationParams {
            d,
            eps_nbhd: 8.0 * curve.max_spacing(),
            arc_match_tol: 1e-9 * d,
        }
    }

    pub fn validate(&self, curve: &SampledCurve) -> Result<(), ClassError> {
        if !(self.d > 0.0 && self.d.is_finite()) {
            return Err(ClassError::BadParameter(format!(
                "disk diameter must be positive and finite, got {}",
                self.d
            )));
        }
        if !(self.arc_match_tol > 0.0 && self.arc_match_tol.is_finite()) {
            return Err(ClassError::BadParameter(format!(
                "arc_match_tol must be positive and finite, got {}",
                self.arc_match_tol
            )));
        }
        if !(self.eps_nbhd > 2.0 * curve.max_spacing()) {
            return Err(ClassError::BadParameter(format!(
                "eps_nbhd {} must exceed twice the sample spacing {}",
                self.eps_nbhd,
                curve.max_spacing()
            )));
        }
        Ok(())
    }
}

/// Signed-distance extremes of the two neighborhood windows; negative means
/// inside the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideStats {
    pub left_min: f64,
    pub left_max: f64,
    pub right_min: f64,
    pub right_max: f64,
}

/// Per-class sample counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassCounts {
    pub a: usize,
    pub b: usize,
    pub ab: usize,
    pub ba: usize,
    pub c: usize,
    pub unresolved: usize,
}

impl ClassCounts {
    pub fn of(&self, class: PointClass) -> usize {
        match class {
            PointClass::A => self.a,
            PointClass::B => self.b,
            PointClass::AB => self.ab,
            PointClass::BA => self.ba,
            PointClass::C => self.c,
            PointClass::Unresolved => self.unresolved,
        }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.ab + self.ba + self.c + self.unresolved
    }

    fn bump(&mut self, class: PointClass) {
        match class {
            PointClass::A => self.a += 1,
            PointClass::B => self.b += 1,
            PointClass::AB => self.ab += 1,
            PointClass::BA => self.ba += 1,
            PointClass::C => self.c += 1,
            PointClass::Unresolved => self.unresolved += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// One label per curve sample.
    pub labels: Vec<PointClass>,
    /// Window signed-distance extremes per sample, for export/diagnosis.
    pub stats: Vec<SideStats>,
    pub counts: ClassCounts,
    /// Every sample got exactly one label and the counts add up.
    pub partition_ok: bool,
}

/// The disk of diameter d tangent to the curve at sample i, on the
/// inner-normal side: center = point + (d/2) * inner_normal.
pub fn tangent_disk_at(curve: &SampledCurve, i: usize, d: f64) -> Circle {
    let frame = curve.frame(i);
    Circle::new(frame.point + frame.inner_normal.scale(d / 2.0), d / 2.0)
}

/// Sample indices strictly after i (dir=+1) or before i (dir=-1) whose
/// arclength distance from i stays within eps. Capped so the two side
/// windows can never overlap.
fn side_window(curve: &SampledCurve, i: usize, eps: f64, dir: i64) -> Vec<usize> {
    let n = curve.len();
    let cap = (n - 1) / 2;
    let mut out = Vec::new();
    let mut dist = 0.0;
    let mut j = i;
    while out.len() < cap {
        let next = ((j as i64 + dir).rem_euclid(n as i64)) as usize;
        dist += curve.point(j).dist(curve.point(next));
        if dist > eps {
            break;
        }
        out.push(next);
        j = next;
    }
    out
}

const MIN_SIDE_SAMPLES: usize = 3;

fn classify_vertex(
    curve: &SampledCurve,
    i: usize,
    params: &ClassificationParams,
) -> Result<(PointClass, SideStats), ClassError> {
    // Right = increasing parameter; the curve runs counterclockwise, so
    // with the inner normal "up", right is the forward direction.
    let right = side_window(curve, i, params.eps_nbhd, 1);
    let left = side_window(curve, i, params.eps_nbhd, -1);
    let got = left.len().min(right.len());
    if got < MIN_SIDE_SAMPLES {
        return Err(ClassError::WindowTooSmall {
            got,
            min: MIN_SIDE_SAMPLES,
        });
    }
    let disk = tangent_disk_at(curve, i, params.d);
    let extremes = |idx: &[usize]| {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &j in idx {
            let sd = disk.signed_distance(curve.point(j));
            min = min.min(sd);
            max = max.max(sd);
        }
        (min, max)
    };
    let (left_min, left_max) = extremes(&left);
    let (right_min, right_max) = extremes(&right);
    let stats = SideStats {
        left_min,
        left_max,
        right_min,
        right_max,
    };
    let tol = params.arc_match_tol;
    let on = |min: f64, max: f64| -tol <= min && max <= tol;
    let inside = |max: f64| max < -tol;
    let outside = |min: f64| min > tol;
    let class = if on(left_min, left_max) && on(right_min, right_max) {
        PointClass::C
    } else if inside(left_max) && inside(right_max) {
        PointClass::A
    } else if outside(left_min) && outside(right_min) {
        PointClass::B
    } else if inside(left_max) && outside(right_min) {
        PointClass::AB
    } else if outside(left_min) && inside(right_max) {
        PointClass::BA
    } else {
        PointClass::Unresolved
    };
    Ok((class, stats))
}

/// Classifies one sample; see [`classify_curve`] for the batch form.
pub fn classify_point(
    curve: &SampledCurve,
    i: usize,
    params: &ClassificationParams,
) -> Result<PointClass, ClassError> {
    params.validate(curve)?;
    classify_vertex(curve, i, params).map(|(class, _)| class)
}

/// Classifies every sample of the curve. Parallel over vertices with
/// deterministic output; the first per-vertex error (in index order) wins.
pub fn classify_curve(
    curve: &SampledCurve,
    params: &ClassificationParams,
) -> Result<ClassificationReport, ClassError> {
    params.validate(curve)?;
    let results: Vec<Result<(PointClass, SideStats), ClassError>> = (0..curve.len())
        .into_par_iter()
        .map(|i| classify_vertex(curve, i, params))
        .collect();
    let mut labels = Vec::with_capacity(curve.len());
    let mut stats = Vec::with_capacity(curve.len());
    let mut counts = ClassCounts::default();
    for r in results {
        let (class, s) = r?;
        counts.bump(class);
        labels.push(class);
        stats.push(s);
    }
    let partition_ok = counts.total() == labels.len() && labels.len() == curve.len();
    Ok(ClassificationReport {
        labels,
        stats,
        counts,
        partition_ok,
    })
}

pub const CLASSIFICATION_CSV_HEADER: &str = "index,x,y,label,left_min,left_max,right_min,right_max";

/// Renders a classification as CSV, one row per curve sample.
pub fn classification_to_csv(curve: &SampledCurve, report: &ClassificationReport) -> String {
    use std::fmt::Write as _;
    let mut out = String::with_capacity(64 + curve.len() * 96);
    out.push_str(CLASSIFICATION_CSV_HEADER);
    out.push('\n');
    for i in 0..curve.len() {
        let p = curve.point(i);
        let s = &report.stats[i];
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            i, p.x, p.y, report.labels[i], s.left_min, s.left_max, s.right_min, s.right_max
        );
    }
    out
}
