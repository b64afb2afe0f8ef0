//! Residual compacts K = D-bar minus a union of packed open cells (disks,
//! squares, or ellipse interiors). Membership is exact over the finite cell
//! list: the outer closure is kept, every open cell interior is removed, so
//! all boundary circles and cell boundaries belong to K.

pub mod probe;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Circle, Point2};

/// Required clear gap between cell closures, relative to the outer radius.
const PACKING_MARGIN_REL: f64 = 1e-6;

/// Disjointness slack used when validating, relative to the outer radius.
/// Strictly smaller than the construction margin, so generated packings
/// always validate.
const VALIDATE_EPS_REL: f64 = 1e-9;

/// Consecutive rejected candidates before generation gives up.
const FAIL_BUDGET: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PackingError {
    #[error("invalid packing parameter: {0}")]
    BadParameter(String),
    #[error("packing constraint violated: {0}")]
    Invalid(String),
    #[error("cannot parse packing text: {0}")]
    ParseError(String),
}

/// Disjoint open disks packed strictly inside an open outer disk.
/// Construction is greedy and seed-deterministic: packings with the same
/// seed are prefixes of one another as max_count grows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskPacking {
    pub outer: Circle,
    pub inner: Vec<Circle>,
    /// Number of accepted generations (equals inner.len() for generated
    /// packings).
    pub depth: usize,
    pub rng_seed: u64,
}

/// Open cell shapes for the square/ellipse packing variants; axis-aligned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Cell {
    Disk(Circle),
    Square { center: Point2, half: f64 },
    Ellipse { center: Point2, a: f64, b: f64 },
}

impl Cell {
    /// Radius of a circumscribed circle; disjoint bounding circles certify
    /// disjoint cells.
    fn bounding_radius(&self) -> f64 {
        match *self {
            Cell::Disk(c) => c.radius,
            Cell::Square { half, .. } => half * std::f64::consts::SQRT_2,
            Cell::Ellipse { a, b, .. } => a.max(b),
        }
    }

    fn center(&self) -> Point2 {
        match *self {
            Cell::Disk(c) => c.center,
            Cell::Square { center, .. } | Cell::Ellipse { center, .. } => center,
        }
    }

    /// Strict interior test; the cell boundary stays in K.
    fn contains_open(&self, p: Point2) -> bool {
        match *self {
            Cell::Disk(c) => p.dist_sq(c.center) < c.radius * c.radius,
            Cell::Square { center, half } => {
                (p.x - center.x).abs() < half && (p.y - center.y).abs() < half
            }
            Cell::Ellipse { center, a, b } => {
                let dx = (p.x - center.x) / a;
                let dy = (p.y - center.y) / b;
                dx * dx + dy * dy < 1.0
            }
        }
    }

    /// Interior test shrunk by eps: points within eps of the boundary
    /// count as outside. Keeps exact tangency points, whose coordinates
    /// carry rounding noise, on the K side.
    fn contains_open_shrunk(&self, p: Point2, eps: f64) -> bool {
        match *self {
            Cell::Disk(c) => p.dist(c.center) < c.radius - eps,
            Cell::Square { center, half } => {
                (p.x - center.x).abs() < half - eps && (p.y - center.y).abs() < half - eps
            }
            Cell::Ellipse { center, a, b } => {
                let dx = (p.x - center.x) / a;
                let dy = (p.y - center.y) / b;
                dx * dx + dy * dy < 1.0 - eps / a.min(b)
            }
        }
    }
}

/// Packing of mixed open cells inside an open outer disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapePacking {
    pub outer: Circle,
    pub cells: Vec<Cell>,
    pub depth: usize,
    pub rng_seed: u64,
}

/// The residual compact: closure of the outer disk minus all open cells.
/// Membership: inside-or-on the outer circle AND on-or-outside every cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CompactSetK {
    Disks(DiskPacking),
    Shapes(ShapePacking),
}

impl CompactSetK {
    pub fn outer(&self) -> Circle {
        match self {
            CompactSetK::Disks(p) => p.outer,
            CompactSetK::Shapes(p) => p.outer,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            CompactSetK::Disks(p) => p.depth,
            CompactSetK::Shapes(p) => p.depth,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            CompactSetK::Disks(p) => p.rng_seed,
            CompactSetK::Shapes(p) => p.rng_seed,
        }
    }

    /// Circular boundaries of the set: the outer circle plus every disk
    /// cell. Used for exact tangency detection while probing.
    pub fn circles(&self) -> Vec<Circle> {
        let mut out = vec![self.outer()];
        match self {
            CompactSetK::Disks(p) => out.extend(p.inner.iter().copied()),
            CompactSetK::Shapes(p) => out.extend(p.cells.iter().filter_map(|c| match c {
                Cell::Disk(d) => Some(*d),
                _ => None,
            })),
        }
        out
    }

    /// All removed cells in a shape-agnostic form.
    pub fn cells(&self) -> Vec<Cell> {
        match self {
            CompactSetK::Disks(p) => p.inner.iter().map(|&c| Cell::Disk(c)).collect(),
            CompactSetK::Shapes(p) => p.cells.clone(),
        }
    }

    /// Exact membership against the defining formula.
    pub fn contains(&self, p: Point2) -> bool {
        let outer = self.outer();
        if p.dist_sq(outer.center) > outer.radius * outer.radius {
            return false;
        }
        match self {
            CompactSetK::Disks(pk) => pk
                .inner
                .iter()
                .all(|c| p.dist_sq(c.center) >= c.radius * c.radius),
            CompactSetK::Shapes(pk) => pk.cells.iter().all(|c| !c.contains_open(p)),
        }
    }
}

/// Membership in the residual compact; see [`CompactSetK::contains`].
#[inline]
pub fn k_membership(k: &CompactSetK, p: Point2) -> bool {
    k.contains(p)
}

fn sample_center(rng: &mut ChaCha8Rng, outer: Circle, max_center_dist: f64) -> Point2 {
    use rand::Rng;
    // Rejection from the bounding square keeps the distribution uniform
    // over the feasible disk and the draw sequence seed-deterministic.
    loop {
        let x: f64 = rng.random_range(-1.0..1.0);
        let y: f64 = rng.random_range(-1.0..1.0);
        let p = Point2::new(x * outer.radius, y * outer.radius);
        if p.norm_sq() <= max_center_dist * max_center_dist {
            return Point2::new(outer.center.x + p.x, outer.center.y + p.y);
        }
    }
}

/// Largest radius admissible at `center`: clearance to the outer boundary
/// and to every existing bounding circle, minus the packing margin.
fn feasible_radius(center: Point2, outer: Circle, taken: &[(Point2, f64)], margin: f64) -> f64 {
    let mut r = outer.radius - margin - center.dist(outer.center);
    for &(c, br) in taken {
        r = r.min(center.dist(c) - br - margin);
    }
    r
}

/// Greedy disk packing: repeatedly draw a center, shrink the radius to fit
/// (capped at a third of the outer radius), and accept while at least
/// min_r remains. Deterministic for a fixed seed; stops at max_count
/// accepted disks or after a run of rejected candidates.
pub fn greedy_circle_packing(
    outer: Circle,
    min_r: f64,
    max_count: usize,
    seed: u64,
) -> Result<DiskPacking, PackingError> {
    if !(min_r > 0.0 && min_r < outer.radius / 2.0) {
        return Err(PackingError::BadParameter(format!(
            "min_r must lie in (0, outer.radius/2), got {min_r}"
        )));
    }
    let margin = PACKING_MARGIN_REL * outer.radius;
    let cap = outer.radius / 3.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inner: Vec<Circle> = Vec::new();
    let mut taken: Vec<(Point2, f64)> = Vec::new();
    let mut failures = 0;
    while inner.len() < max_count && failures < FAIL_BUDGET {
        let center = sample_center(&mut rng, outer, outer.radius - margin - min_r);
        let r = feasible_radius(center, outer, &taken, margin).min(cap);
        if r >= min_r {
            inner.push(Circle::new(center, r));
            taken.push((center, r));
            failures = 0;
        } else {
            failures += 1;
        }
    }
    Ok(DiskPacking {
        outer,
        depth: inner.len(),
        inner,
        rng_seed: seed,
    })
}

/// Shape of the cells drawn by [`greedy_shape_packing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellKind {
    Square,
    Ellipse,
}

/// Greedy packing with square or ellipse cells, sized from the same
/// bounding-circle clearance logic as the disk variant.
pub fn greedy_shape_packing(
    outer: Circle,
    kind: CellKind,
    min_size: f64,
    max_count: usize,
    seed: u64,
) -> Result<ShapePacking, PackingError> {
    use rand::Rng;
    if !(min_size > 0.0 && min_size < outer.radius / 2.0) {
        return Err(PackingError::BadParameter(format!(
            "min_size must lie in (0, outer.radius/2), got {min_size}"
        )));
    }
    let margin = PACKING_MARGIN_REL * outer.radius;
    let cap = outer.radius / 3.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells: Vec<Cell> = Vec::new();
    let mut taken: Vec<(Point2, f64)> = Vec::new();
    let mut failures = 0;
    while cells.len() < max_count && failures < FAIL_BUDGET {
        let center = sample_center(&mut rng, outer, outer.radius - margin - min_size);
        let bound = feasible_radius(center, outer, &taken, margin).min(cap);
        if bound < min_size {
            failures += 1;
            continue;
        }
        let cell = match kind {
            CellKind::Square => Cell::Square {
                center,
                half: bound / std::f64::consts::SQRT_2,
            },
            CellKind::Ellipse => {
                let aspect: f64 = rng.random_range(0.4..1.0);
                Cell::Ellipse {
                    center,
                    a: bound,
                    b: bound * aspect,
                }
            }
        };
        cells.push(cell);
        taken.push((center, bound));
        failures = 0;
    }
    Ok(ShapePacking {
        outer,
        depth: cells.len(),
        cells,
        rng_seed: seed,
    })
}

/// Exhaustive validity check: every cell's bounding circle strictly inside
/// the open outer disk, all bounding circles pairwise disjoint with
/// clearance. Bounding circles certify disjointness for squares/ellipses;
/// generated packings always satisfy the certificate.
pub fn validate_packing(k: &CompactSetK) -> Result<(), PackingError> {
    let outer = k.outer();
    let eps = VALIDATE_EPS_REL * outer.radius;
    let cells = k.cells();
    for (i, cell) in cells.iter().enumerate() {
        let c = cell.center();
        let br = cell.bounding_radius();
        if !(br > 0.0 && br.is_finite()) {
            return Err(PackingError::Invalid(format!(
                "cell {i} has non-positive extent {br}"
            )));
        }
        if c.dist(outer.center) + br >= outer.radius - eps {
            return Err(PackingError::Invalid(format!(
                "cell {i} touches or leaves the outer disk"
            )));
        }
        for (j, other) in cells.iter().enumerate().take(i) {
            if c.dist(other.center()) <= br + other.bounding_radius() + eps {
                return Err(PackingError::Invalid(format!(
                    "cells {j} and {i} touch or overlap"
                )));
            }
        }
    }
    Ok(())
}

/// Fraction of the outer disk covered by cells (bounding circles for
/// squares use their true area, not the bounding area).
pub fn coverage_fraction(k: &CompactSetK) -> f64 {
    let outer = k.outer();
    let cell_area: f64 = k
        .cells()
        .iter()
        .map(|c| match *c {
            Cell::Disk(d) => std::f64::consts::PI * d.radius * d.radius,
            Cell::Square { half, .. } => 4.0 * half * half,
            Cell::Ellipse { a, b, .. } => std::f64::consts::PI * a * b,
        })
        .sum();
    cell_area / (std::f64::consts::PI * outer.radius * outer.radius)
}

/// Serializes a packing as line-oriented text:
/// a header with kind/depth/seed, then one line per shape.
pub fn packing_to_text(k: &CompactSetK) -> String {
    let mut out = String::new();
    let kind = match k {
        CompactSetK::Disks(_) => "disks",
        CompactSetK::Shapes(_) => "shapes",
    };
    let outer = k.outer();
    let _ = writeln!(
        out,
        "# packing kind={} depth={} seed={}",
        kind,
        k.depth(),
        k.seed()
    );
    let _ = writeln!(
        out,
        "outer disk {} {} {}",
        outer.center.x, outer.center.y, outer.radius
    );
    for cell in k.cells() {
        match cell {
            Cell::Disk(c) => {
                let _ = writeln!(out, "inner disk {} {} {}", c.center.x, c.center.y, c.radius);
            }
            Cell::Square { center, half } => {
                let _ = writeln!(out, "inner square {} {} {}", center.x, center.y, half);
            }
            Cell::Ellipse { center, a, b } => {
                let _ = writeln!(out, "inner ellipse {} {} {} {}", center.x, center.y, a, b);
            }
        }
    }
    out
}

pub fn packing_from_text(text: &str) -> Result<CompactSetK, PackingError> {
    let bad = |msg: String| PackingError::ParseError(msg);
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty document".into()))?;
    let mut kind = None;
    let mut depth = None;
    let mut seed = None;
    if !header.starts_with("# packing") {
        return Err(bad(format!("bad header line: {header}")));
    }
    for tok in header.split_whitespace().skip(2) {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| bad(format!("bad header token: {tok}")))?;
        match key {
            "kind" => kind = Some(value.to_string()),
            "depth" => {
                depth = Some(
                    value
                        .parse::<usize>()
                        .map_err(|e| bad(format!("bad depth: {e}")))?,
                )
            }
            "seed" => {
                seed = Some(
                    value
                        .parse::<u64>()
                        .map_err(|e| bad(format!("bad seed: {e}")))?,
                )
            }
            _ => return Err(bad(format!("unknown header key: {key}"))),
        }
    }
    let kind = kind.ok_or_else(|| bad("header missing kind".into()))?;
    let depth = depth.ok_or_else(|| bad("header missing depth".into()))?;
    let seed = seed.ok_or_else(|| bad("header missing seed".into()))?;
    let parse_f = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| bad(format!("bad number {s}: {e}")))
    };
    let mut outer = None;
    let mut cells = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["outer", "disk", x, y, r] => {
                outer = Some(Circle::new(
                    Point2::new(parse_f(x)?, parse_f(y)?),
                    parse_f(r)?,
                ));
            }
            ["inner", "disk", x, y, r] => cells.push(Cell::Disk(Circle::new(
                Point2::new(parse_f(x)?, parse_f(y)?),
                parse_f(r)?,
            ))),
            ["inner", "square", x, y, h] => cells.push(Cell::Square {
                center: Point2::new(parse_f(x)?, parse_f(y)?),
                half: parse_f(h)?,
            }),
            ["inner", "ellipse", x, y, a, b] => cells.push(Cell::Ellipse {
                center: Point2::new(parse_f(x)?, parse_f(y)?),
                a: parse_f(a)?,
                b: parse_f(b)?,
            }),
            _ => return Err(bad(format!("unrecognized line: {line}"))),
        }
    }
    let outer = outer.ok_or_else(|| bad("missing outer disk line".into()))?;
    match kind.as_str() {
        "disks" => {
            let inner = cells
                .iter()
                .map(|c| match c {
                    Cell::Disk(d) => Ok(*d),
                    _ => Err(bad("non-disk cell in a disks packing".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CompactSetK::Disks(DiskPacking {
                outer,
                inner,
                depth,
                rng_seed: seed,
            }))
        }
        "shapes" => Ok(CompactSetK::Shapes(ShapePacking {
            outer,
            cells,
            depth,
            rng_seed: seed,
        })),
        other => Err(bad(format!("unknown packing kind: {other}"))),
    }
}
