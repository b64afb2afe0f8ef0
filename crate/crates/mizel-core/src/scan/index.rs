//! Uniform-grid acceleration structures: point range queries and exact
//! nearest-distance queries against a polyline. Both are exact: grids only
//! prune candidates, never change which elements pass a query.

use crate::geom::{point_segment_distance, Point2};

/// Per-axis cap on grid cells; construction enlarges the cell instead of
/// exceeding it.
const MAX_CELLS_PER_AXIS: usize = 1024;

/// Queries with radius beyond this many cells fall back to a full scan.
const FULL_SCAN_RADIUS_CELLS: f64 = 8.0;

#[derive(Debug, Clone)]
struct Grid2 {
    origin: Point2,
    cell: f64,
    nx: usize,
    ny: usize,
}

impl Grid2 {
    /// Grid covering [lo, hi] with side `cell`, enlarged as needed to stay
    /// within the per-axis cell cap. Degenerate extents get a single cell.
    fn new(lo: Point2, hi: Point2, cell: f64) -> Grid2 {
        debug_assert!(cell > 0.0 && cell.is_finite());
        let w = (hi.x - lo.x).max(0.0);
        let h = (hi.y - lo.y).max(0.0);
        let max_extent = w.max(h);
        let cell = cell.max(max_extent / MAX_CELLS_PER_AXIS as f64);
        let nx = ((w / cell).ceil() as usize + 1).min(MAX_CELLS_PER_AXIS);
        let ny = ((h / cell).ceil() as usize + 1).min(MAX_CELLS_PER_AXIS);
        Grid2 {
            origin: lo,
            cell,
            nx,
            ny,
        }
    }

    /// Cell coordinates without clamping; points outside the covered box get
    /// virtual coordinates so ring walks can start anywhere.
    #[inline]
    fn coords(&self, p: Point2) -> (i64, i64) {
        (
            ((p.x - self.origin.x) / self.cell).floor() as i64,
            ((p.y - self.origin.y) / self.cell).floor() as i64,
        )
    }

    #[inline]
    fn clamp(&self, (ix, iy): (i64, i64)) -> (usize, usize) {
        (
            ix.clamp(0, self.nx as i64 - 1) as usize,
            iy.clamp(0, self.ny as i64 - 1) as usize,
        )
    }

    #[inline]
    fn in_bounds(&self, (ix, iy): (i64, i64)) -> bool {
        ix >= 0 && iy >= 0 && (ix as usize) < self.nx && (iy as usize) < self.ny
    }

    #[inline]
    fn cell_index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    /// Largest Chebyshev cell distance from `from` to any grid cell; bounds
    /// ring expansion.
    fn max_ring(&self, from: (i64, i64)) -> i64 {
        let dx = (from.0).max(self.nx as i64 - 1 - from.0).max(0);
        let dy = (from.1).max(self.ny as i64 - 1 - from.1).max(0);
        dx.max(dy)
    }
}

fn csr_from_cells(cell_of_entry: &[usize], n_cells: usize) -> (Vec<usize>, Vec<u32>) {
    let mut start = vec![0usize; n_cells + 1];
    for &c in cell_of_entry {
        start[c + 1] += 1;
    }
    for i in 0..n_cells {
        start[i + 1] += start[i];
    }
    let mut entries = vec![0u32; cell_of_entry.len()];
    let mut cursor = start.clone();
    for (idx, &c) in cell_of_entry.iter().enumerate() {
        entries[cursor[c]] = idx as u32;
        cursor[c] += 1;
    }
    (start, entries)
}

/// AABB of a non-empty finite point stream.
fn bounds_of(points: impl Iterator<Item = Point2>) -> (Point2, Point2) {
    let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
    let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    (Point2::new(x0, y0), Point2::new(x1, y1))
}

/// Uniform-grid point index with exact disk and annulus range queries.
/// Queries return ascending point indices; radii larger than 8 grid cells
/// degrade to a full scan with identical results.
#[derive(Debug, Clone)]
pub struct SpatialIndex {
    points: Vec<Point2>,
    grid: Grid2,
    cell_start: Vec<usize>,
    entries: Vec<u32>,
}

impl SpatialIndex {
    /// Builds the index; `cell` is a lower bound on the grid cell side.
    ///
    /// # Panics
    /// If `cell` is not positive and finite or any point is non-finite.
    pub fn build(points: Vec<Point2>, cell: f64) -> SpatialIndex {
        assert!(
            cell > 0.0 && cell.is_finite(),
            "grid cell must be positive and finite, got {cell}"
        );
        for p in &points {
            assert!(
                p.x.is_finite() && p.y.is_finite(),
                "cannot index non-finite point {p:?}"
            );
        }
        let (lo, hi) = if points.is_empty() {
            (Point2::ORIGIN, Point2::ORIGIN)
        } else {
            bounds_of(points.iter().copied())
        };
        let grid = Grid2::new(lo, hi, cell);
        let cells: Vec<usize> = points
            .iter()
            .map(|&p| {
                let (ix, iy) = grid.clamp(grid.coords(p));
                grid.cell_index(ix, iy)
            })
            .collect();
        let (cell_start, entries) = csr_from_cells(&cells, grid.cell_count());
        SpatialIndex {
            points,
            grid,
            cell_start,
            entries,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point2 {
        self.points[i]
    }

    #[inline]
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    /// Indices of all points with distance(center) <= r, ascending.
    pub fn query_disk(&self, center: Point2, r: f64) -> Vec<usize> {
        self.query_annulus(center, 0.0, r)
    }

    /// Indices of all points with r_lo <= distance(center) <= r_hi,
    /// ascending. Bounds are inclusive and tested on squared distances.
    pub fn query_annulus(&self, center: Point2, r_lo: f64, r_hi: f64) -> Vec<usize> {
        debug_assert!(r_lo >= 0.0 && r_hi >= r_lo && r_hi.is_finite());
        let lo_sq = r_lo * r_lo;
        let hi_sq = r_hi * r_hi;
        let keep = |i: usize| {
            let d2 = self.points[i].dist_sq(center);
            lo_sq <= d2 && d2 <= hi_sq
        };
        if r_hi > FULL_SCAN_RADIUS_CELLS * self.grid.cell {
            return (0..self.points.len()).filter(|&i| keep(i)).collect();
        }
        let (cx0, cy0) = self
            .grid
            .coords(Point2::new(center.x - r_hi, center.y - r_hi));
        let (cx1, cy1) = self
            .grid
            .coords(Point2::new(center.x + r_hi, center.y + r_hi));
        let (ix0, iy0) = self.grid.clamp((cx0, cy0));
        let (ix1, iy1) = self.grid.clamp((cx1, cy1));
        let mut out = Vec::new();
        for iy in iy0..=iy1 {
            for ix in ix0..=ix1 {
                let c = self.grid.cell_index(ix, iy);
                for &e in &self.entries[self.cell_start[c]..self.cell_start[c + 1]] {
                    let i = e as usize;
                    if keep(i) {
                        out.push(i);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Exact nearest point/distance on a segment soup (a polyline's segments),
/// accelerated by a uniform grid with ring expansion. The returned distance
/// is always the true minimum; on exact ties the winning segment is the
/// lowest-index one among those visited before the search bound closed.
#[derive(Debug, Clone)]
pub struct CurveDistanceIndex {
    segs: Vec<(Point2, Point2)>,
    grid: Grid2,
    cell_start: Vec<usize>,
    entries: Vec<u32>,
}

impl CurveDistanceIndex {
    /// Builds from explicit segments; at least one required.
    ///
    /// # Panics
    /// If `segs` is empty or contains non-finite endpoints.
    pub fn from_segments(segs: Vec<(Point2, Point2)>) -> CurveDistanceIndex {
        assert!(!segs.is_empty(), "need at least one segment");
        for (p, q) in &segs {
            assert!(
                p.x.is_finite() && p.y.is_finite() && q.x.is_finite() && q.y.is_finite(),
                "cannot index non-finite segment ({p:?}, {q:?})"
            );
        }
        let (lo, hi) = bounds_of(segs.iter().flat_map(|&(p, q)| [p, q]));
        let max_seg = segs.iter().map(|&(p, q)| p.dist(q)).fold(0.0f64, f64::max);
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(0.0);
        let cell = max_seg.max(extent / 256.0).max(1e-300).max(
            // Fully degenerate input (all segments a single point): any
            // positive cell works, distances stay exact.
            if extent == 0.0 && max_seg == 0.0 {
                1.0
            } else {
                0.0
            },
        );
        let grid = Grid2::new(lo, hi, cell);
        // Register each segment in every cell its AABB overlaps; a superset
        // of the cells it crosses, which preserves exactness.
        let mut cell_of_entry = Vec::new();
        let mut seg_of_entry = Vec::new();
        for (si, &(p, q)) in segs.iter().enumerate() {
            let (ax, ay) = grid.clamp(grid.coords(Point2::new(p.x.min(q.x), p.y.min(q.y))));
            let (bx, by) = grid.clamp(grid.coords(Point2::new(p.x.max(q.x), p.y.max(q.y))));
            for iy in ay..=by {
                for ix in ax..=bx {
                    cell_of_entry.push(grid.cell_index(ix, iy));
                    seg_of_entry.push(si as u32);
                }
            }
        }
        let n_cells = grid.cell_count();
        let mut start = vec![0usize; n_cells + 1];
        for &c in &cell_of_entry {
            start[c + 1] += 1;
        }
        for i in 0..n_cells {
            start[i + 1] += start[i];
        }
        let mut entries = vec![0u32; cell_of_entry.len()];
        let mut cursor = start.clone();
        for (k, &c) in cell_of_entry.iter().enumerate() {
            entries[cursor[c]] = seg_of_entry[k];
            cursor[c] += 1;
        }
        CurveDistanceIndex {
            segs,
            grid,
            cell_start: start,
            entries,
        }
    }

    /// Closed polyline over the curve's samples (n segments).
    pub fn closed(points: &[Point2]) -> CurveDistanceIndex {
        let n = points.len();
        Self::from_segments((0..n).map(|i| (points[i], points[(i + 1) % n])).collect())
    }

    /// Open chain over the samples (n-1 segments, no closing edge).
    pub fn open_chain(points: &[Point2]) -> CurveDistanceIndex {
        Self::from_segments(points.windows(2).map(|w| (w[0], w[1])).collect())
    }

    #[inline]
    pub fn segment_count(&self) -> usize {
        self.segs.len()
    }

    /// Exact minimum distance from p to the segment soup.
    pub fn distance(&self, p: Point2) -> f64 {
        self.nearest(p).0
    }

    /// (distance, segment index) of the nearest segment; ring expansion
    /// stops once no unvisited cell can beat the current best.
    pub fn nearest(&self, p: Point2) -> (f64, usize) {
        let from = self.grid.coords(p);
        let max_ring = self.grid.max_ring(from);
        let mut best = (f64::INFINITY, usize::MAX);
        for ring in 0..=max_ring {
            // Cells on Chebyshev ring `ring` are at least (ring-1) cells
            // away in Euclidean distance from anywhere in the start cell.
            if best.0.is_finite() && (ring - 1) as f64 * self.grid.cell > best.0 {
                break;
            }
            self.visit_ring(from, ring, |si| {
                let (a, b) = self.segs[si];
                let d = point_segment_distance(p, a, b);
                if d < best.0 || (d == best.0 && si < best.1) {
                    best = (d, si);
                }
            });
        }
        debug_assert!(best.0.is_finite());
        best
    }

    fn visit_ring(&self, (cx, cy): (i64, i64), ring: i64, mut f: impl FnMut(usize)) {
        let mut visit_cell = |ix: i64, iy: i64| {
            if self.grid.in_bounds((ix, iy)) {
                let c = self.grid.cell_index(ix as usize, iy as usize);
                for &e in &self.entries[self.cell_start[c]..self.cell_start[c + 1]] {
                    f(e as usize);
                }
            }
        };
        if ring == 0 {
            visit_cell(cx, cy);
            return;
        }
        for ix in (cx - ring)..=(cx + ring) {
            visit_cell(ix, cy - ring);
            visit_cell(ix, cy + ring);
        }
        for iy in (cy - ring + 1)..=(cy + ring - 1) {
            visit_cell(cx - ring, iy);
            visit_cell(cx + ring, iy);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn brute_disk(points: &[Point2], center: Point2, r: f64) -> Vec<usize> {
        (0..points.len())
            .filter(|&i| points[i].dist_sq(center) <= r * r)
            .collect()
    }

    #[test]
    fn unit_square_corner_queries() {
        let corners = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let idx = SpatialIndex::build(corners, 0.5);
        assert_eq!(idx.query_disk(Point2::new(0.0, 0.0), 0.1), vec![0]);
        // Disk covering everything returns every point.
        assert_eq!(idx.query_disk(Point2::new(0.5, 0.5), 2.0), vec![0, 1, 2, 3]);
        // Boundary is inclusive.
        assert_eq!(idx.query_disk(Point2::new(0.0, 0.0), 1.0), vec![0, 1, 3]);
    }

    #[test]
    fn random_disk_queries_match_brute_force() {
        let mut rng = StdRng::seed_from_u64(7);
        let points: Vec<Point2> = (0..4000)
            .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let idx = SpatialIndex::build(points.clone(), 0.05);
        for _ in 0..300 {
            let c = Point2::new(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2));
            // Spans both the grid path and the full-scan fallback.
            let r = rng.random_range(0.0..1.5);
            assert_eq!(idx.query_disk(c, r), brute_disk(&points, c, r));
        }
    }

    #[test]
    fn random_annulus_queries_match_brute_force() {
        let mut rng = StdRng::seed_from_u64(11);
        let points: Vec<Point2> = (0..2000)
            .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let idx = SpatialIndex::build(points.clone(), 0.08);
        for _ in 0..200 {
            let c = Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let r0 = rng.random_range(0.0..0.8);
            let r1 = r0 + rng.random_range(0.0..0.5);
            let got = idx.query_annulus(c, r0, r1);
            let want: Vec<usize> = (0..points.len())
                .filter(|&i| {
                    let d2 = points[i].dist_sq(c);
                    r0 * r0 <= d2 && d2 <= r1 * r1
                })
                .collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn nearest_segment_distance_matches_brute_force() {
        let mut rng = StdRng::seed_from_u64(3);
        let n = 512;
        let points: Vec<Point2> = (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Point2::new(1.7 * t.cos(), 0.9 * t.sin())
            })
            .collect();
        let idx = CurveDistanceIndex::closed(&points);
        assert_eq!(idx.segment_count(), n);
        for _ in 0..500 {
            let p = Point2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let brute = (0..n)
                .map(|i| point_segment_distance(p, points[i], points[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min);
            let (d, _) = idx.nearest(p);
            // Exact: same minimum over the same candidate values.
            assert_eq!(d, brute);
        }
    }

    #[test]
    fn open_chain_excludes_closing_segment() {
        // Quarter arc from (1,0) to (0,1); the closing chord would pass
        // near the origin-side midpoint.
        let pts: Vec<Point2> = (0..=64)
            .map(|i| {
                let t = std::f64::consts::FRAC_PI_2 * i as f64 / 64.0;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        let open = CurveDistanceIndex::open_chain(&pts);
        let closed = CurveDistanceIndex::closed(&pts);
        assert_eq!(open.segment_count(), 64);
        assert_eq!(closed.segment_count(), 65);
        let probe = Point2::new(0.5, 0.5);
        // The closed version is nearer because the chord passes by.
        assert!(closed.distance(probe) < open.distance(probe));
    }

    #[test]
    fn distant_query_points_are_exact() {
        let pts: Vec<Point2> = (0..128)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 128.0;
                Point2::new(t.cos(), t.sin())
            })
            .collect();
        let idx = CurveDistanceIndex::closed(&pts);
        let p = Point2::new(500.0, -220.0);
        let brute = (0..128)
            .map(|i| point_segment_distance(p, pts[i], pts[(i + 1) % 128]))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(idx.distance(p), brute);
    }
}
