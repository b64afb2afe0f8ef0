//! Circle probes against a residual compact or a sampled curve: count the
//! connected components of probe ∩ target, flag components of positive
//! angular measure, and search probe families for a prescribed finite
//! intersection cardinality.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{k_membership, CompactSetK};
use crate::curve::SampledCurve;
use crate::geom::{
    circle_circle_intersect, point_segment_distance, Circle, IntersectionResult, Point2,
    ToleranceContext,
};

/// Minimum angular resolution accepted when probing a compact.
pub const MIN_PROBE_RESOLUTION: usize = 3600;

/// Resolution used by the cardinality search.
const SEARCH_RESOLUTION: usize = 3600;

/// A refined in-run longer than this many sample steps counts as an arc.
const FULL_ARC_STEPS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbeError {
    #[error("invalid probe parameter: {0}")]
    BadParameter(String),
    #[error("{transitions} membership transitions at resolution {resolution}; result untrusted")]
    ResolutionTooLow {
        transitions: usize,
        resolution: usize,
    },
}

/// Outcome of a single probe. `components` counts every connected
/// component; `isolated_components` counts only the zero-measure ones
/// (exact tangency points for compacts, contacts and crossings for
/// curves), which is the number that "exactly m points" refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub components: usize,
    pub isolated_components: usize,
    pub has_full_arc: bool,
    pub samples_used: usize,
}

/// A maximal in-target run of probe angles, refined by bisection.
#[derive(Debug, Clone, Copy)]
struct Run {
    start: f64,
    measure: f64,
}

impl Run {
    fn contains(&self, angle: f64, slop: f64) -> bool {
        // Cyclic containment in [start - slop, start + measure + slop].
        let rel = (angle - self.start).rem_euclid(TAU);
        rel <= self.measure + slop || rel >= TAU - slop
    }
}

/// Membership with an eps pad toward K, for exact tangency points whose
/// floating-point placement may sit a few ulps off their circle.
fn tangency_in_k(k: &CompactSetK, p: Point2, eps: f64) -> bool {
    let outer = k.outer();
    p.dist(outer.center) <= outer.radius + eps
        && k.cells().iter().all(|c| !c.contains_open_shrunk(p, eps))
}

/// Bisects a membership transition between two probe angles down to
/// `angle_eps`, preserving the sample states at both ends.
fn refine_transition<F: Fn(f64) -> bool>(
    in_k: &F,
    mut lo: f64,
    mut hi: f64,
    angle_eps: f64,
) -> f64 {
    let lo_state = in_k(lo);
    debug_assert_ne!(lo_state, in_k(hi));
    while hi - lo > angle_eps {
        let mid = 0.5 * (lo + hi);
        if in_k(mid) == lo_state {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Samples a membership predicate around a circle and returns the refined
/// maximal in-runs, or None if every sample is in (one full run).
fn sampled_runs<F: Fn(f64) -> bool>(
    in_k: &F,
    resolution: usize,
    angle_eps: f64,
) -> Result<Option<Vec<Run>>, usize> {
    let step = TAU / resolution as f64;
    let states: Vec<bool> = (0..resolution).map(|i| in_k(i as f64 * step)).collect();
    let transitions: Vec<usize> = (0..resolution)
        .filter(|&i| states[i] != states[(i + 1) % resolution])
        .collect();
    if transitions.len() > resolution / 8 {
        return Err(transitions.len());
    }
    if transitions.is_empty() {
        return Ok(if states[0] { None } else { Some(Vec::new()) });
    }
    // Refined angle of each transition, in sample order. Index i marks the
    // change between sample i and sample i+1.
    let refined: Vec<(f64, bool)> = transitions
        .iter()
        .map(|&i| {
            let angle = refine_transition(in_k, i as f64 * step, (i + 1) as f64 * step, angle_eps);
            (angle, !states[i]) // true = entering the target
        })
        .collect();
    let mut runs = Vec::new();
    for (j, &(angle, entering)) in refined.iter().enumerate() {
        if entering {
            let (exit, _) = refined[(j + 1) % refined.len()];
            let measure = (exit - angle).rem_euclid(TAU);
            runs.push(Run {
                start: angle,
                measure,
            });
        }
    }
    Ok(Some(runs))
}

/// Counts connected components of probe ∩ K by dense angular sampling with
/// bisection-refined run boundaries, then merges in exact tangency points
/// against every circle of the packing. Tangency is the only way K gains
/// an isolated point: cell closures are pairwise disjoint, so no two
/// boundaries share a point, and a transversal boundary crossing always
/// continues into nearby K material (an arc).
pub fn probe_circle_intersection(
    k: &CompactSetK,
    probe: Circle,
    angular_resolution: usize,
) -> Result<ProbeResult, ProbeError> {
    if angular_resolution < MIN_PROBE_RESOLUTION {
        return Err(ProbeError::BadParameter(format!(
            "angular_resolution must be at least {MIN_PROBE_RESOLUTION}, got {angular_resolution}"
        )));
    }
    let scale = k.outer().radius.max(probe.radius);
    let tol = ToleranceContext::for_scale(scale);
    let circles = k.circles();

    // A probe coincident with any packing circle lies entirely in K: the
    // outer circle and every cell boundary belong to K.
    if circles
        .iter()
        .any(|&c| circle_circle_intersect(probe, c, &tol) == IntersectionResult::Coincident)
    {
        return Ok(ProbeResult {
            components: 1,
            isolated_components: 0,
            has_full_arc: true,
            samples_used: angular_resolution,
        });
    }

    let in_k = |angle: f64| k_membership(k, probe.point_at(angle));
    let angle_eps = (tol.eps_geom / probe.radius).min(1e-6);
    let step = TAU / angular_resolution as f64;
    let runs = match sampled_runs(&in_k, angular_resolution, angle_eps) {
        Ok(None) => {
            return Ok(ProbeResult {
                components: 1,
                isolated_components: 0,
                has_full_arc: true,
                samples_used: angular_resolution,
            })
        }
        Ok(Some(runs)) => runs,
        Err(transitions) => {
            return Err(ProbeError::ResolutionTooLow {
                transitions,
                resolution: angular_resolution,
            })
        }
    };

    // Exact tangencies not already inside a sampled run are isolated
    // points of probe ∩ K.
    let mut isolated = 0usize;
    for &c in &circles {
        if let IntersectionResult::Tangent(p) = circle_circle_intersect(probe, c, &tol) {
            if tangency_in_k(k, p, tol.eps_geom) {
                let angle = (p.y - probe.center.y)
                    .atan2(p.x - probe.center.x)
                    .rem_euclid(TAU);
                if !runs.iter().any(|r| r.contains(angle, step)) {
                    isolated += 1;
                }
            }
        }
    }

    let has_full_arc = runs.iter().any(|r| r.measure > FULL_ARC_STEPS * step);
    Ok(ProbeResult {
        components: runs.len() + isolated,
        isolated_components: isolated,
        has_full_arc,
        samples_used: angular_resolution,
    })
}

/// Counts connected components of probe ∩ curve from per-vertex signed
/// clearances. Vertices within `contact_tol` of the probe circle are
/// treated as on it; each maximal on-run is one contact component, each
/// sign change one crossing. A segment with both ends outside can still
/// dip inside; both ends inside cannot bulge out (distance to a point is
/// convex along a segment, so the maximum sits at an endpoint).
pub fn probe_curve_intersection(
    curve: &SampledCurve,
    probe: Circle,
    contact_tol: Option<f64>,
) -> Result<ProbeResult, ProbeError> {
    let tol = contact_tol.unwrap_or(2.0 * curve.max_spacing());
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(ProbeError::BadParameter(format!(
            "contact_tol must be positive and finite, got {tol}"
        )));
    }
    let n = curve.len();
    let state = |i: usize| -> i8 {
        let d = curve.point(i).dist(probe.center) - probe.radius;
        if d.abs() <= tol {
            0
        } else if d < 0.0 {
            -1
        } else {
            1
        }
    };
    let states: Vec<i8> = (0..n).map(state).collect();

    if states.iter().all(|&s| s == 0) {
        return Ok(ProbeResult {
            components: 1,
            isolated_components: 0,
            has_full_arc: true,
            samples_used: n,
        });
    }

    let total_length = curve.total_length();
    let arc_threshold = total_length / 10.0;
    let mut components = 0usize;
    let mut long_runs = 0usize;

    // Maximal cyclic runs of on-vertices; start counting from a vertex
    // known to be off the circle so no run is split by the seam.
    let anchor = states
        .iter()
        .position(|&s| s != 0)
        .expect("nonzero state exists");
    let mut i = 0;
    while i < n {
        let idx = (anchor + i) % n;
        if states[idx] == 0 {
            let mut len = 1;
            while len < n && states[(idx + len) % n] == 0 {
                len += 1;
            }
            let mut run_length = 0.0;
            for j in 0..len.saturating_sub(1) {
                let a = (idx + j) % n;
                run_length += curve.point(a).dist(curve.point((a + 1) % n));
            }
            components += 1;
            if run_length > arc_threshold {
                long_runs += 1;
            }
            i += len;
        } else {
            i += 1;
        }
    }

    // Crossings and grazes on segments with no on-vertex endpoint.
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (states[i], states[j]);
        if a == 0 || b == 0 {
            continue;
        }
        if a != b {
            components += 1;
        } else if a == 1 {
            let min_d = point_segment_distance(probe.center, curve.point(i), curve.point(j));
            if min_d < probe.radius - tol {
                components += 2;
            } else if (min_d - probe.radius).abs() <= tol {
                components += 1;
            }
        }
    }

    Ok(ProbeResult {
        components,
        isolated_components: components - long_runs,
        has_full_arc: long_runs > 0,
        samples_used: n,
    })
}

/// What the cardinality search probes against.
#[derive(Debug, Clone, Copy)]
pub enum ProbeTarget<'a> {
    Compact(&'a CompactSetK),
    Curve(&'a SampledCurve),
}

/// How candidate probes are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeFamily {
    /// Centers and radii uniform over a box around the target.
    Random,
    /// Probes built tangent to the target: tangent to a boundary circle of
    /// a compact, or through a curve vertex along its inner normal.
    TangentStructured,
}

/// Search result: the first matching probe in draw order, if any, and how
/// many probes were consumed. Absence is a budget report, not a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub witness: Option<(Circle, ProbeResult)>,
    pub probes_used: usize,
}

fn draw_probes(
    target: ProbeTarget<'_>,
    family: ProbeFamily,
    budget: usize,
    seed: u64,
) -> Vec<Circle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes = Vec::with_capacity(budget);
    match (target, family) {
        (ProbeTarget::Compact(k), ProbeFamily::Random) => {
            let outer = k.outer();
            let span = 1.5 * outer.radius;
            for _ in 0..budget {
                let cx = outer.center.x + rng.random_range(-span..span);
                let cy = outer.center.y + rng.random_range(-span..span);
                let r = rng.random_range(0.02 * outer.radius..1.2 * outer.radius);
                probes.push(Circle::new(Point2::new(cx, cy), r));
            }
        }
        (ProbeTarget::Compact(k), ProbeFamily::TangentStructured) => {
            let circles = k.circles();
            let outer = k.outer();
            for _ in 0..budget {
                let pick = rng.random_range(0..circles.len());
                let angle: f64 = rng.random_range(0.0..TAU);
                let u = Point2::new(angle.cos(), angle.sin());
                let probe = if pick == 0 {
                    // Externally tangent to the outer circle.
                    let t = rng.random_range(0.1..1.0) * outer.radius;
                    Circle::new(outer.center + u.scale(outer.radius + t), t)
                } else {
                    // Internally tangent inside a removed disk.
                    let c = circles[pick];
                    let t = rng.random_range(0.1..0.9) * c.radius;
                    Circle::new(c.center + u.scale(c.radius - t), t)
                };
                probes.push(probe);
            }
        }
        (ProbeTarget::Curve(curve), ProbeFamily::Random) => {
            let (lo, hi) = curve.bounding_box();
            let diag = lo.dist(hi);
            let pad = 0.5 * diag;
            for _ in 0..budget {
                let cx = rng.random_range(lo.x - pad..hi.x + pad);
                let cy = rng.random_range(lo.y - pad..hi.y + pad);
                let r = rng.random_range(0.05 * diag..0.75 * diag);
                probes.push(Circle::new(Point2::new(cx, cy), r));
            }
        }
        (ProbeTarget::Curve(curve), ProbeFamily::TangentStructured) => {
            let (lo, hi) = curve.bounding_box();
            let diag = lo.dist(hi);
            for _ in 0..budget {
                let v = rng.random_range(0..curve.len());
                let t = rng.random_range(0.05 * diag..0.5 * diag);
                let center = curve.point(v) + curve.inner_normal(v).scale(t);
                probes.push(Circle::new(center, t));
            }
        }
    }
    probes
}

/// Searches a deterministic probe stream for the first probe meeting the
/// target in exactly `m` isolated points and no arc. Probes whose counts
/// cannot be trusted (ResolutionTooLow) are skipped. The draw order is
/// fixed by the seed and the scan is first-by-index, so outcomes are
/// reproducible regardless of thread count.
pub fn exactly_m_search(
    target: ProbeTarget<'_>,
    m: usize,
    family: ProbeFamily,
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome, ProbeError> {
    if m == 0 {
        return Err(ProbeError::BadParameter("m must be at least 1".into()));
    }
    if budget == 0 {
        return Err(ProbeError::BadParameter("budget must be at least 1".into()));
    }
    let probes = draw_probes(target, family, budget, seed);
    let evaluate = |probe: &Circle| -> Option<ProbeResult> {
        let result = match target {
            ProbeTarget::Compact(k) => probe_circle_intersection(k, *probe, SEARCH_RESOLUTION),
            ProbeTarget::Curve(curve) => probe_curve_intersection(curve, *probe, None),
        };
        match result {
            Ok(r)
                if !r.has_full_arc
                    && r.isolated_components == m
                    && r.components == r.isolated_components =>
            {
                Some(r)
            }
            _ => None,
        }
    };
    let hit = probes
        .par_iter()
        .enumerate()
        .find_first(|(_, probe)| evaluate(probe).is_some());
    Ok(match hit {
        Some((idx, probe)) => SearchOutcome {
            witness: Some((*probe, evaluate(probe).expect("re-evaluation is pure"))),
            probes_used: idx + 1,
        },
        None => SearchOutcome {
            witness: None,
            probes_used: budget,
        },
    })
}

pub const PROBE_CSV_HEADER: &str = "cx,cy,radius,components,full_arc";

/// Renders probe outcomes as CSV under [`PROBE_CSV_HEADER`].
pub fn probes_to_csv(rows: &[(Circle, ProbeResult)]) -> String {
    let mut out = String::from(PROBE_CSV_HEADER);
    out.push('\n');
    for (probe, result) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            probe.center.x, probe.center.y, probe.radius, result.components, result.has_full_arc
        );
    }
    out
}
