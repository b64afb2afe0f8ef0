//! Rectangle-property scans: search a sampled set for three points forming
//! three corners of a rectangle whose completed fourth corner leaves the
//! set. Such triples witness against the rectangle property, which holds
//! only on circles among closed convex curves.
//!
//! The scan enumerates ordered triples (a, b, c) with the right angle at b.
//! Pruned strategies and the brute-force reference submit candidates to one
//! shared predicate pipeline, so their violation sets agree bitwise; the
//! strategies only ever shrink the candidate set using exact-superset
//! geometric bounds.

pub mod index;
pub mod membership;

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::SampledCurve;
use crate::geom::{
    complete_rectangle, right_angle_deviation, Point2, RectangleMetrics, ToleranceContext,
};

pub use index::{CurveDistanceIndex, SpatialIndex};
pub use membership::{CurveMembership, OpenChainMembership, PointSetMembership, SetMembership};

/// Default right-angle tolerance (radians) for sampled sets.
pub const DEFAULT_ANGLE_TOL: f64 = 1e-3;

/// Default cap on retained witnesses; counts stay exact past the cap.
pub const DEFAULT_MAX_WITNESSES: usize = 10_000;

/// Below this set size every strategy falls back to plain enumeration.
const PRUNE_MIN_N: usize = 64;

/// Minimum set size for parallel execution (budgeted scans stay serial so
/// truncation is deterministic).
const PAR_MIN_N: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScanError {
    #[error("cannot scan an empty point set")]
    EmptySet,
    #[error("invalid scan constraints: {0}")]
    InvalidConstraints(String),
}

/// Diagonal target with an inclusive acceptance band [target-band, target+band].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalConstraint {
    pub target: f64,
    pub band: f64,
}

impl DiagonalConstraint {
    #[inline]
    pub fn lo(&self) -> f64 {
        (self.target - self.band).max(0.0)
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.target + self.band
    }
}

/// Bound on the rectangle's smaller side; at most one form per scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SideBound {
    /// short/long ratio at most this value, in (0, 1].
    MaxAspect(f64),
    /// Short side at most this length, in (0, diagonal target) when a
    /// diagonal constraint is present.
    MaxShortSide(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConstraints {
    pub diagonal: Option<DiagonalConstraint>,
    pub side_bound: Option<SideBound>,
    /// A point belongs to the set iff its membership distance is at most
    /// this; the completed corner is a violation iff it exceeds it.
    pub membership_tol: f64,
    /// Allowed deviation from a right angle at b, radians.
    pub angle_tol: f64,
    /// Witness retention cap; violation counts stay exact beyond it.
    pub max_witnesses: usize,
}

impl ScanConstraints {
    pub fn new(membership_tol: f64) -> ScanConstraints {
        ScanConstraints {
            diagonal: None,
            side_bound: None,
            membership_tol,
            angle_tol: DEFAULT_ANGLE_TOL,
            max_witnesses: DEFAULT_MAX_WITNESSES,
        }
    }

    pub fn with_diagonal(mut self, target: f64, band: f64) -> Self {
        self.diagonal = Some(DiagonalConstraint { target, band });
        self
    }

    pub fn with_max_aspect(mut self, eps: f64) -> Self {
        self.side_bound = Some(SideBound::MaxAspect(eps));
        self
    }

    pub fn with_max_short_side(mut self, s: f64) -> Self {
        self.side_bound = Some(SideBound::MaxShortSide(s));
        self
    }

    pub fn with_angle_tol(mut self, tol: f64) -> Self {
        self.angle_tol = tol;
        self
    }

    pub fn with_max_witnesses(mut self, k: usize) -> Self {
        self.max_witnesses = k;
        self
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        let bad = |msg: String| Err(ScanError::InvalidConstraints(msg));
        if !(self.membership_tol > 0.0 && self.membership_tol.is_finite()) {
            return bad(format!(
                "membership_tol must be positive and finite, got {}",
                self.membership_tol
            ));
        }
        // The angular-sweep strategy needs a window strictly inside a
        // quarter turn; anything near pi/2 stops being "a right angle".
        if !(self.angle_tol > 0.0 && self.angle_tol < 0.5) {
            return bad(format!(
                "angle_tol must lie in (0, 0.5) radians, got {}",
                self.angle_tol
            ));
        }
        if self.max_witnesses == 0 {
            return bad("max_witnesses must be at least 1".into());
        }
        if let Some(d) = &self.diagonal {
            if !(d.target > 0.0 && d.target.is_finite()) {
                return bad(format!(
                    "diagonal target must be positive, got {}",
                    d.target
                ));
            }
            if !(d.band >= 0.0 && d.band.is_finite() && d.band < d.target) {
                return bad(format!(
                    "diagonal band must lie in [0, target), got {}",
                    d.band
                ));
            }
        }
        match self.side_bound {
            Some(SideBound::MaxAspect(e)) => {
                if !(e > 0.0 && e <= 1.0) {
                    return bad(format!("max_aspect must lie in (0, 1], got {e}"));
                }
            }
            Some(SideBound::MaxShortSide(s)) => {
                if !(s > 0.0 && s.is_finite()) {
                    return bad(format!("max_short_side must be positive, got {s}"));
                }
                if let Some(d) = &self.diagonal {
                    if s >= d.target {
                        return bad(format!(
                            "max_short_side {s} must stay below the diagonal target {}",
                            d.target
                        ));
                    }
                }
            }
            None => {}
        }
        Ok(())
    }
}

/// A triple on the set whose completed rectangle corner lies off it (or on
/// it: satisfied completions reuse the same record shape). The right angle
/// is at b; a and c are in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleWitness {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    /// Completed corner a + c - b.
    pub fourth: Point2,
    /// Membership distance of the completed corner.
    pub fourth_distance: f64,
    pub metrics: RectangleMetrics,
}

/// Scan outcome. Equality ignores `runtime_seconds`; everything else is
/// deterministic for fixed inputs, strategy, and budget.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    /// Violations sorted by descending fourth_distance, then lexicographic
    /// coordinates; truncated to the witness cap.
    pub violations: Vec<RectangleWitness>,
    /// Exact violation count (may exceed violations.len()).
    pub violation_count: usize,
    pub satisfied_count: usize,
    /// Triples submitted to the predicate pipeline. Pruned strategies
    /// submit fewer than brute force; violation and satisfied outcomes are
    /// identical regardless.
    pub triples_examined: usize,
    pub set_size: usize,
    /// True when retained witnesses were capped at max_witnesses.
    pub truncated: bool,
    /// True when the triple budget cut enumeration short.
    pub budget_exhausted: bool,
    pub runtime_seconds: f64,
}

impl PartialEq for ScanReport {
    fn eq(&self, other: &Self) -> bool {
        self.violations == other.violations
            && self.violation_count == other.violation_count
            && self.satisfied_count == other.satisfied_count
            && self.triples_examined == other.triples_examined
            && self.set_size == other.set_size
            && self.truncated == other.truncated
            && self.budget_exhausted == other.budget_exhausted
    }
}

fn witness_order(x: &RectangleWitness, y: &RectangleWitness) -> Ordering {
    y.fourth_distance
        .total_cmp(&x.fourth_distance)
        .then_with(|| x.a.lex_cmp(y.a))
        .then_with(|| x.b.lex_cmp(y.b))
        .then_with(|| x.c.lex_cmp(y.c))
        .then_with(|| x.fourth.lex_cmp(y.fourth))
}

/// Running totals plus a bounded top-K witness buffer. Merging is
/// associative: each side keeps at least its own top K, so the union
/// contains the global top K.
struct Accum {
    violations: Vec<RectangleWitness>,
    violation_count: usize,
    satisfied_count: usize,
    triples_examined: usize,
    budget_exhausted: bool,
    cap: usize,
}

impl Accum {
    fn new(cap: usize) -> Accum {
        Accum {
            violations: Vec::new(),
            violation_count: 0,
            satisfied_count: 0,
            triples_examined: 0,
            budget_exhausted: false,
            cap,
        }
    }

    #[inline]
    fn note(&mut self, outcome: Option<(bool, RectangleWitness)>) {
        self.triples_examined += 1;
        match outcome {
            Some((true, w)) => {
                self.violation_count += 1;
                self.violations.push(w);
                if self.violations.len() >= 4 * self.cap.max(16) {
                    self.compact();
                }
            }
            Some((false, _)) => self.satisfied_count += 1,
            None => {}
        }
    }

    fn compact(&mut self) {
        self.violations.sort_unstable_by(witness_order);
        self.violations.truncate(self.cap);
    }

    fn merge(mut self, mut other: Accum) -> Accum {
        self.violation_count += other.violation_count;
        self.satisfied_count += other.satisfied_count;
        self.triples_examined += other.triples_examined;
        self.budget_exhausted |= other.budget_exhausted;
        self.violations.append(&mut other.violations);
        if self.violations.len() >= 4 * self.cap.max(16) {
            self.compact();
        }
        self
    }

    fn into_report(mut self, set_size: usize, started: Instant) -> ScanReport {
        self.compact();
        let truncated = self.violation_count > self.violations.len();
        ScanReport {
            violations: self.violations,
            violation_count: self.violation_count,
            satisfied_count: self.satisfied_count,
            triples_examined: self.triples_examined,
            set_size,
            truncated,
            budget_exhausted: self.budget_exhausted,
            runtime_seconds: started.elapsed().as_secs_f64(),
        }
    }
}

/// The shared predicate pipeline. Every strategy submits candidate index
/// triples here; the checks are symmetric in a and c bitwise, so submission
/// order between the diagonal endpoints does not matter.
struct Pipeline<'a> {
    points: &'a [Point2],
    membership: &'a dyn SetMembership,
    diag: Option<(f64, f64)>,
    side: Option<SideBound>,
    membership_tol: f64,
    /// sin^2(angle_tol) with relative slack; cheap superset prefilter for
    /// the authoritative completion check.
    sin_sq_prefilter: f64,
    tol: ToleranceContext,
}

impl<'a> Pipeline<'a> {
    fn new(
        points: &'a [Point2],
        membership: &'a dyn SetMembership,
        constraints: &ScanConstraints,
    ) -> Pipeline<'a> {
        let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
        let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let scale = ((x1 - x0).hypot(y1 - y0)).max(1e-12);
        let sin_tol = constraints.angle_tol.sin() * (1.0 + 1e-9);
        Pipeline {
            points,
            membership,
            diag: constraints.diagonal.as_ref().map(|d| (d.lo(), d.hi())),
            side: constraints.side_bound,
            membership_tol: constraints.membership_tol,
            sin_sq_prefilter: sin_tol * sin_tol,
            tol: ToleranceContext {
                eps_geom: 1e-9 * scale,
                eps_angle: constraints.angle_tol,
                scale,
            },
        }
    }

    fn examine(&self, ai: u32, bi: u32, ci: u32) -> Option<(bool, RectangleWitness)> {
        let a = self.points[ai as usize];
        let b = self.points[bi as usize];
        let c = self.points[ci as usize];
        if let Some((lo, hi)) = self.diag {
            let d = a.dist(c);
            if !(lo <= d && d <= hi) {
                return None;
            }
        }
        let u = a - b;
        let v = c - b;
        let dot = u.dot(v);
        if dot * dot > u.norm_sq() * v.norm_sq() * self.sin_sq_prefilter {
            return None;
        }
        // Authoritative gate: rejects degenerate triples and angles beyond
        // angle_tol; the prefilter above only ever passes a superset.
        let fourth = complete_rectangle(a, b, c, &self.tol).ok()?;
        let metrics = RectangleMetrics::from_right_triple(a, b, c);
        match self.side {
            Some(SideBound::MaxAspect(e)) if metrics.aspect > e => return None,
            Some(SideBound::MaxShortSide(s)) if metrics.short > s => return None,
            _ => {}
        }
        let fourth_distance = self.membership.distance(fourth);
        let violation = fourth_distance > self.membership_tol;
        let (wa, wc) = if c.lex_cmp(a) == Ordering::Less {
            (c, a)
        } else {
            (a, c)
        };
        Some((
            violation,
            RectangleWitness {
                a: wa,
                b,
                c: wc,
                fourth,
                fourth_distance,
                metrics,
            },
        ))
    }
}

/// Plain triple enumeration; the oracle every pruned strategy is tested
/// against. Budgeted runs are serial and deterministic.
pub fn brute_force_scan(
    set_points: &[Point2],
    membership: &dyn SetMembership,
    constraints: &ScanConstraints,
    budget: Option<usize>,
) -> Result<ScanReport, ScanError> {
    let started = Instant::now();
    validate_inputs(set_points, constraints)?;
    let pl = Pipeline::new(set_points, membership, constraints);
    let parallel = budget.is_none() && set_points.len() >= PAR_MIN_N;
    let acc = brute_strategy(&pl, budget, parallel, constraints.max_witnesses);
    Ok(acc.into_report(set_points.len(), started))
}

fn brute_strategy(pl: &Pipeline, budget: Option<usize>, parallel: bool, cap: usize) -> Accum {
    let n = pl.points.len();
    if parallel {
        return (0..n as u32)
            .into_par_iter()
            .fold(
                || Accum::new(cap),
                |mut acc, bi| {
                    brute_inner(pl, bi, &mut acc);
                    acc
                },
            )
            .reduce(|| Accum::new(cap), Accum::merge);
    }
    let limit = budget.unwrap_or(usize::MAX);
    let mut acc = Accum::new(cap);
    'outer: for bi in 0..n as u32 {
        for ai in 0..n as u32 {
            if ai == bi {
                continue;
            }
            for ci in ai + 1..n as u32 {
                if ci == bi {
                    continue;
                }
                if acc.triples_examined >= limit {
                    acc.budget_exhausted = true;
                    break 'outer;
                }
                acc.note(pl.examine(ai, bi, ci));
            }
        }
    }
    acc
}

fn brute_inner(pl: &Pipeline, bi: u32, acc: &mut Accum) {
    let n = pl.points.len() as u32;
    for ai in 0..n {
        if ai == bi {
            continue;
        }
        for ci in ai + 1..n {
            if ci != bi {
                acc.note(pl.examine(ai, bi, ci));
            }
        }
    }
}

/// Scans for rectangle-property violations. With a diagonal constraint the
/// strategy enumerates near-diagonal pairs from a spatial index and fetches
/// corner candidates from exact-superset disks (side-bounded scans) or the
/// Thales annulus; without one it sweeps directions around each corner
/// point and pairs near-perpendicular neighbors. Reports are deterministic
/// for fixed inputs and budget; parallel and serial runs agree.
pub fn scan_rectangle_property(
    set_points: &[Point2],
    membership: &dyn SetMembership,
    constraints: &ScanConstraints,
    budget: Option<usize>,
) -> Result<ScanReport, ScanError> {
    let started = Instant::now();
    validate_inputs(set_points, constraints)?;
    let n = set_points.len();
    let pl = Pipeline::new(set_points, membership, constraints);
    let parallel = budget.is_none() && n >= PAR_MIN_N;
    let acc = if n < PRUNE_MIN_N {
        brute_strategy(&pl, budget, false, constraints.max_witnesses)
    } else if constraints.diagonal.is_some() {
        diagonal_strategy(&pl, constraints, budget, parallel)
    } else {
        sweep_strategy(&pl, constraints, budget, parallel)
    };
    Ok(acc.into_report(n, started))
}

fn validate_inputs(points: &[Point2], constraints: &ScanConstraints) -> Result<(), ScanError> {
    constraints.validate()?;
    if points.is_empty() {
        return Err(ScanError::EmptySet);
    }
    for (i, p) in points.iter().enumerate() {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(ScanError::InvalidConstraints(format!(
                "point {i} is not finite"
            )));
        }
    }
    Ok(())
}

/// Free-diagonal strategy: for each corner b, sort the other points by
/// direction and pair those whose directions differ by a quarter turn
/// within the (slightly slacked) angle window. Each unordered pair appears
/// once: of its two direction differences only one lies near pi/2.
fn sweep_strategy(
    pl: &Pipeline,
    constraints: &ScanConstraints,
    budget: Option<usize>,
    parallel: bool,
) -> Accum {
    let n = pl.points.len();
    let cap = constraints.max_witnesses;
    let window = constraints.angle_tol + 1e-9;
    let run = |bi: u32, acc: &mut Accum, limit: usize| -> bool {
        let b = pl.points[bi as usize];
        let mut others: Vec<(f64, u32)> = Vec::with_capacity(n - 1);
        for (i, p) in pl.points.iter().enumerate() {
            if i as u32 == bi {
                continue;
            }
            let u = *p - b;
            if u.x == 0.0 && u.y == 0.0 {
                // Duplicate of b: no direction, and every triple through it
                // is degenerate.
                continue;
            }
            others.push((u.y.atan2(u.x), i as u32));
        }
        others.sort_unstable_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        let k = others.len();
        if k < 2 {
            return true;
        }
        let mut ext: Vec<f64> = Vec::with_capacity(2 * k);
        ext.extend(others.iter().map(|o| o.0));
        ext.extend(others.iter().map(|o| o.0 + 2.0 * std::f64::consts::PI));
        for i in 0..k {
            let t_lo = others[i].0 + (std::f64::consts::FRAC_PI_2 - window);
            let t_hi = others[i].0 + (std::f64::consts::FRAC_PI_2 + window);
            let lo = ext.partition_point(|&x| x < t_lo);
            let hi = ext.partition_point(|&x| x <= t_hi);
            for j in lo..hi {
                if acc.triples_examined >= limit {
                    acc.budget_exhausted = true;
                    return false;
                }
                acc.note(pl.examine(others[i].1, bi, others[j % k].1));
            }
        }
        true
    };
    if parallel {
        (0..n as u32)
            .into_par_iter()
            .fold(
                || Accum::new(cap),
                |mut acc, bi| {
                    run(bi, &mut acc, usize::MAX);
                    acc
                },
            )
            .reduce(|| Accum::new(cap), Accum::merge)
    } else {
        let limit = budget.unwrap_or(usize::MAX);
        let mut acc = Accum::new(cap);
        for bi in 0..n as u32 {
            if !run(bi, &mut acc, limit) {
                break;
            }
        }
        acc
    }
}

fn merge_dedup(xs: &[usize], ys: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(xs.len() + ys.len());
    let (mut i, mut j) = (0, 0);
    while i < xs.len() || j < ys.len() {
        let next = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => {
                if x < y {
                    i += 1;
                    x
                } else if y < x {
                    j += 1;
                    y
                } else {
                    i += 1;
                    j += 1;
                    x
                }
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => break,
        };
        out.push(next);
    }
    out
}

/// Diagonal-first strategy: enumerate point pairs at the diagonal length
/// from a spatial index, then fetch right-angle corner candidates. With a
/// side bound, the corner lies within the short-side radius of one of the
/// diagonal endpoints; without one, it lies in a thin annulus around the
/// Thales circle over the diagonal. Both candidate sets are inflated so
/// they strictly contain everything the authoritative predicate accepts.
fn diagonal_strategy(
    pl: &Pipeline,
    constraints: &ScanConstraints,
    budget: Option<usize>,
    parallel: bool,
) -> Accum {
    let d = constraints.diagonal.as_ref().expect("diagonal strategy");
    let (lo, hi) = (d.lo(), d.hi());
    let cap = constraints.max_witnesses;
    let points = pl.points;
    let coord_scale = points
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs()])
        .fold(hi, f64::max);
    let pad = 1e-9 * hi + 1e-12 * coord_scale;
    let q_lo = (lo * (1.0 - 1e-12) - pad).max(0.0);
    let q_hi = hi * (1.0 + 1e-12) + pad;
    // Cell sized off the inflated radius so annulus queries stay on the
    // grid path instead of the full-scan fallback.
    let cell = (q_hi / 8.0).max(1e-300);
    let spatial = SpatialIndex::build(points.to_vec(), cell);

    // Corner-candidate radius when a side bound applies. For aspect bounds,
    // short <= eps * long and long <= diag / sqrt(1 - 2 sin(tol)) near a
    // right angle, so the corner sits within this disk of a or c.
    let corner_disk = constraints.side_bound.map(|sb| {
        let r = match sb {
            SideBound::MaxShortSide(s) => s,
            SideBound::MaxAspect(e) => {
                // angle_tol < 0.5 keeps 1 - 2 sin(tol) >= 0.04; the floor is
                // only a safety net.
                let sin_tol = constraints.angle_tol.sin();
                e * q_hi / (1.0 - 2.0 * sin_tol).max(1e-3).sqrt()
            }
        };
        r * (1.0 + 1e-12) + pad
    });
    // Thales annulus factor: corners with angle within tol of a right angle
    // sit between R*tan(pi/4 - tol/2) and R/tan(pi/4 - tol/2) from the
    // diagonal midpoint, R = half the diagonal.
    let thales = (std::f64::consts::FRAC_PI_4 - constraints.angle_tol / 2.0).tan();

    let run = |ai: u32, acc: &mut Accum, limit: usize| -> bool {
        let a = points[ai as usize];
        let partners = spatial.query_annulus(a, q_lo, q_hi);
        for &ci in partners.iter().filter(|&&ci| ci as u32 > ai) {
            let c = points[ci];
            let candidates = match corner_disk {
                Some(r) => merge_dedup(&spatial.query_disk(a, r), &spatial.query_disk(c, r)),
                None => {
                    let mid = Point2::new(0.5 * (a.x + c.x), 0.5 * (a.y + c.y));
                    let r = 0.5 * a.dist(c);
                    let inner = (r * thales * (1.0 - 1e-9) - pad).max(0.0);
                    let outer = r / thales * (1.0 + 1e-9) + pad;
                    spatial.query_annulus(mid, inner, outer)
                }
            };
            for &bi in &candidates {
                if bi == ai as usize || bi == ci {
                    continue;
                }
                if acc.triples_examined >= limit {
                    acc.budget_exhausted = true;
                    return false;
                }
                acc.note(pl.examine(ai, bi as u32, ci as u32));
            }
        }
        true
    };
    if parallel {
        (0..points.len() as u32)
            .into_par_iter()
            .fold(
                || Accum::new(cap),
                |mut acc, ai| {
                    run(ai, &mut acc, usize::MAX);
                    acc
                },
            )
            .reduce(|| Accum::new(cap), Accum::merge)
    } else {
        let limit = budget.unwrap_or(usize::MAX);
        let mut acc = Accum::new(cap);
        for ai in 0..points.len() as u32 {
            if !run(ai, &mut acc, limit) {
                break;
            }
        }
        acc
    }
}

/// Builds a point index; see [`SpatialIndex::build`].
pub fn build_index(points: Vec<Point2>, cell: f64) -> SpatialIndex {
    SpatialIndex::build(points, cell)
}

/// Short-side bound for the infinitesimal rectangle condition: either the
/// side ratio or the short side length at the fixed diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EpsBound {
    Aspect(f64),
    ShortSide(f64),
}

/// Outcome of [`verify_infinitesimal_condition`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfinitesimalOutcome {
    /// True iff the scan found no violation.
    pub holds: bool,
    pub report: ScanReport,
}

impl InfinitesimalOutcome {
    pub fn witnesses(&self) -> &[RectangleWitness] {
        &self.report.violations
    }
}

/// Checks the infinitesimal rectangle condition on a sampled curve:
/// rectangles with diagonal d (within a band of the sampling tolerance) and
/// small short side must close up on the curve. `membership_tol` defaults
/// to twice the maximum sample spacing.
pub fn verify_infinitesimal_condition(
    curve: &SampledCurve,
    d: f64,
    eps: EpsBound,
    membership_tol: Option<f64>,
    budget: Option<usize>,
) -> Result<InfinitesimalOutcome, ScanError> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(ScanError::InvalidConstraints(format!(
            "diagonal must be positive and finite, got {d}"
        )));
    }
    let mtol = membership_tol.unwrap_or(2.0 * curve.max_spacing());
    let mut constraints = ScanConstraints::new(mtol).with_diagonal(d, mtol);
    constraints = match eps {
        EpsBound::Aspect(e) => constraints.with_max_aspect(e),
        EpsBound::ShortSide(s) => constraints.with_max_short_side(s),
    };
    let membership = CurveMembership::new(curve);
    let report = scan_rectangle_property(curve.points(), &membership, &constraints, budget)?;
    Ok(InfinitesimalOutcome {
        holds: report.violation_count == 0,
        report,
    })
}

/// Independently re-verifies a witness against a membership oracle and the
/// constraints: the triple lies on the set, the angle is right within
/// tolerance, the completion and metrics reproduce, and the fourth corner
/// really exceeds the membership tolerance.
pub fn recheck_witness(
    w: &RectangleWitness,
    membership: &dyn SetMembership,
    constraints: &ScanConstraints,
) -> bool {
    let mtol = constraints.membership_tol;
    if membership.distance(w.a) > mtol
        || membership.distance(w.b) > mtol
        || membership.distance(w.c) > mtol
    {
        return false;
    }
    match right_angle_deviation(w.a, w.b, w.c) {
        Some(dev) if dev <= constraints.angle_tol => {}
        _ => return false,
    }
    if w.a + w.c - w.b != w.fourth {
        return false;
    }
    if RectangleMetrics::from_right_triple(w.a, w.b, w.c) != w.metrics {
        return false;
    }
    if let Some(d) = &constraints.diagonal {
        if !(d.lo() <= w.metrics.diagonal && w.metrics.diagonal <= d.hi()) {
            return false;
        }
    }
    match constraints.side_bound {
        Some(SideBound::MaxAspect(e)) if w.metrics.aspect > e => return false,
        Some(SideBound::MaxShortSide(s)) if w.metrics.short > s => return false,
        _ => {}
    }
    let fd = membership.distance(w.fourth);
    fd == w.fourth_distance && fd > mtol
}

pub const WITNESS_CSV_HEADER: &str =
    "ax,ay,bx,by,cx,cy,sx,sy,fourth_distance,diagonal,short,long,aspect";

/// Renders witnesses as CSV (shortest round-trip float formatting, so equal
/// values produce identical bytes).
pub fn witnesses_to_csv(witnesses: &[RectangleWitness]) -> String {
    let mut out = String::with_capacity(64 + witnesses.len() * 128);
    out.push_str(WITNESS_CSV_HEADER);
    out.push('\n');
    for w in witnesses {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            w.a.x,
            w.a.y,
            w.b.x,
            w.b.y,
            w.c.x,
            w.c.y,
            w.fourth.x,
            w.fourth.y,
            w.fourth_distance,
            w.metrics.diagonal,
            w.metrics.short,
            w.metrics.long,
            w.metrics.aspect
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::generators::{generate_circle, generate_ellipse};

    fn square_plus_off_point() -> Vec<Point2> {
        // Three corners of the unit square plus a decoy far from the
        // completion (1, 1).
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(4.0, 4.0),
        ]
    }

    #[test]
    fn finds_the_open_corner_of_a_square() {
        let pts = square_plus_off_point();
        let membership = PointSetMembership::new(pts.clone());
        let constraints = ScanConstraints::new(1e-6);
        let report = scan_rectangle_property(&pts, &membership, &constraints, None).unwrap();
        assert_eq!(report.violation_count, 1);
        let w = &report.violations[0];
        assert_eq!(w.b, Point2::new(0.0, 0.0));
        assert_eq!(w.fourth, Point2::new(1.0, 1.0));
        // Nearest set point to (1,1) is a unit-square corner at distance 1.
        assert_eq!(w.fourth_distance, 1.0);
        assert!(recheck_witness(w, &membership, &constraints));
    }

    #[test]
    fn closed_square_has_no_violations() {
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let membership = PointSetMembership::new(pts.clone());
        let report =
            scan_rectangle_property(&pts, &membership, &ScanConstraints::new(1e-6), None).unwrap();
        assert_eq!(report.violation_count, 0);
        // Four right-angle triples complete onto the opposite corner.
        assert_eq!(report.satisfied_count, 4);
    }

    #[test]
    fn non_right_triangle_is_a_vacuous_pass() {
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.5, 1.3),
        ];
        let membership = PointSetMembership::new(pts.clone());
        let report =
            scan_rectangle_property(&pts, &membership, &ScanConstraints::new(1e-6), None).unwrap();
        assert_eq!(report.violation_count, 0);
        assert_eq!(report.satisfied_count, 0);
    }

    #[test]
    fn empty_set_is_rejected() {
        let membership = PointSetMembership::new(vec![]);
        assert_eq!(
            scan_rectangle_property(&[], &membership, &ScanConstraints::new(1e-6), None),
            Err(ScanError::EmptySet)
        );
    }

    #[test]
    fn constraint_validation_rejects_bad_inputs() {
        assert!(ScanConstraints::new(0.0).validate().is_err());
        assert!(ScanConstraints::new(1e-6)
            .with_angle_tol(0.9)
            .validate()
            .is_err());
        assert!(ScanConstraints::new(1e-6)
            .with_max_aspect(1.5)
            .validate()
            .is_err());
        assert!(ScanConstraints::new(1e-6)
            .with_diagonal(1.0, 0.0)
            .with_max_short_side(1.0)
            .validate()
            .is_err());
        assert!(ScanConstraints::new(1e-6)
            .with_diagonal(1.0, 1e-3)
            .with_max_short_side(0.2)
            .validate()
            .is_ok());
    }

    #[test]
    fn budget_truncates_deterministically() {
        let curve = generate_ellipse(1.5, 1.0, 96).unwrap();
        let membership = CurveMembership::new(&curve);
        // Wide angle window so the sweep submits well past the budget.
        let constraints = ScanConstraints::new(2.0 * curve.max_spacing())
            .with_max_aspect(0.5)
            .with_angle_tol(0.1);
        let full =
            scan_rectangle_property(curve.points(), &membership, &constraints, None).unwrap();
        let capped =
            scan_rectangle_property(curve.points(), &membership, &constraints, Some(1000)).unwrap();
        assert!(full.triples_examined > 1000);
        assert!(!full.budget_exhausted);
        assert_eq!(capped.triples_examined, 1000);
        assert!(capped.budget_exhausted);
        let again =
            scan_rectangle_property(curve.points(), &membership, &constraints, Some(1000)).unwrap();
        assert_eq!(capped, again);
    }

    #[test]
    fn small_circle_diagonal_scan_is_clean() {
        let curve = generate_circle(0.5, 200).unwrap();
        let membership = CurveMembership::new(&curve);
        let mtol = 2.0 * curve.max_spacing();
        let constraints = ScanConstraints::new(mtol).with_diagonal(1.0, mtol);
        let report =
            scan_rectangle_property(curve.points(), &membership, &constraints, None).unwrap();
        assert_eq!(report.violation_count, 0);
        assert!(report.satisfied_count > 0);
    }

    #[test]
    fn verify_infinitesimal_on_small_circle_holds() {
        let curve = generate_circle(0.5, 160).unwrap();
        let out =
            verify_infinitesimal_condition(&curve, 1.0, EpsBound::Aspect(0.3), None, None).unwrap();
        assert!(out.holds);
        assert!(out.witnesses().is_empty());
    }

    #[test]
    fn witness_csv_shape() {
        let pts = square_plus_off_point();
        let membership = PointSetMembership::new(pts.clone());
        let report =
            scan_rectangle_property(&pts, &membership, &ScanConstraints::new(1e-6), None).unwrap();
        let csv = witnesses_to_csv(&report.violations);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(WITNESS_CSV_HEADER));
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 13);
        assert!(row.starts_with("0,1,0,0,1,0,1,1,"));
    }

    #[test]
    fn report_equality_ignores_runtime() {
        let pts = square_plus_off_point();
        let membership = PointSetMembership::new(pts.clone());
        let constraints = ScanConstraints::new(1e-6);
        let mut r1 = scan_rectangle_property(&pts, &membership, &constraints, None).unwrap();
        let r2 = scan_rectangle_property(&pts, &membership, &constraints, None).unwrap();
        r1.runtime_seconds = 99.0;
        assert_eq!(r1, r2);
    }
}
