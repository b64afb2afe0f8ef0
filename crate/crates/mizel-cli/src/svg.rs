//! Deterministic SVG 1.1 emission: fixed element order (insertion order),
//! fixed attribute order, shortest-round-trip number formatting. Identical
//! scenes produce identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use mizel_core::{Circle, Point2, PointClass};

use crate::scenario::CliError;

pub const CLASS_COLORS: [(PointClass, &str); 6] = [
    (PointClass::A, "#d62728"),
    (PointClass::B, "#1f77b4"),
    (PointClass::AB, "#ff7f0e"),
    (PointClass::BA, "#9467bd"),
    (PointClass::C, "#2ca02c"),
    (PointClass::Unresolved, "#7f7f7f"),
];

pub fn class_color(class: PointClass) -> &'static str {
    CLASS_COLORS
        .iter()
        .find(|(c, _)| *c == class)
        .map(|(_, color)| *color)
        .expect("every class has a color")
}

enum Item {
    Polyline {
        points: Vec<Point2>,
        closed: bool,
        stroke: String,
        width_rel: f64,
        fill: Option<String>,
    },
    CircleMark {
        circle: Circle,
        stroke: String,
        width_rel: f64,
        fill: Option<String>,
    },
    EllipseMark {
        center: Point2,
        rx: f64,
        ry: f64,
        stroke: String,
        width_rel: f64,
        fill: Option<String>,
    },
    Dot {
        at: Point2,
        color: String,
        radius_rel: f64,
    },
}

/// Layered drawables in paint order. The view box is derived from the
/// content with a 5% margin on each side.
#[derive(Default)]
pub struct Scene {
    items: Vec<Item>,
}

fn assert_finite(values: &[f64]) {
    for v in values {
        assert!(v.is_finite(), "SVG scene coordinates must be finite");
    }
}

impl Scene {
    pub fn new() -> Scene {
        Scene::default()
    }

    pub fn add_polyline(&mut self, points: &[Point2], closed: bool, stroke: &str) {
        for p in points {
            assert_finite(&[p.x, p.y]);
        }
        self.items.push(Item::Polyline {
            points: points.to_vec(),
            closed,
            stroke: stroke.to_string(),
            width_rel: 0.004,
            fill: None,
        });
    }

    pub fn add_filled_polygon(&mut self, points: &[Point2], stroke: &str, fill: &str) {
        for p in points {
            assert_finite(&[p.x, p.y]);
        }
        self.items.push(Item::Polyline {
            points: points.to_vec(),
            closed: true,
            stroke: stroke.to_string(),
            width_rel: 0.003,
            fill: Some(fill.to_string()),
        });
    }

    pub fn add_circle(&mut self, circle: Circle, stroke: &str, fill: Option<&str>) {
        assert_finite(&[circle.center.x, circle.center.y, circle.radius]);
        self.items.push(Item::CircleMark {
            circle,
            stroke: stroke.to_string(),
            width_rel: 0.004,
            fill: fill.map(str::to_string),
        });
    }

    pub fn add_ellipse(
        &mut self,
        center: Point2,
        rx: f64,
        ry: f64,
        stroke: &str,
        fill: Option<&str>,
    ) {
        assert_finite(&[center.x, center.y, rx, ry]);
        self.items.push(Item::EllipseMark {
            center,
            rx,
            ry,
            stroke: stroke.to_string(),
            width_rel: 0.003,
            fill: fill.map(str::to_string),
        });
    }

    pub fn add_dot(&mut self, at: Point2, color: &str) {
        self.add_dot_sized(at, color, 0.006);
    }

    pub fn add_dot_sized(&mut self, at: Point2, color: &str, radius_rel: f64) {
        assert_finite(&[at.x, at.y]);
        self.items.push(Item::Dot {
            at,
            color: color.to_string(),
            radius_rel,
        });
    }

    /// Rectangle witness: outline through a, b, c, fourth, with the fourth
    /// corner flagged by a marker dot.
    pub fn add_witness_rectangle(&mut self, corners: [Point2; 4], stroke: &str) {
        self.add_polyline(&corners, true, stroke);
        self.add_dot_sized(corners[3], stroke, 0.009);
    }

    fn bounds(&self) -> Option<(Point2, Point2)> {
        let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
        let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |x: f64, y: f64| {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        };
        for item in &self.items {
            match item {
                Item::Polyline { points, .. } => {
                    for p in points {
                        grow(p.x, p.y);
                    }
                }
                Item::CircleMark { circle, .. } => {
                    grow(
                        circle.center.x - circle.radius,
                        circle.center.y - circle.radius,
                    );
                    grow(
                        circle.center.x + circle.radius,
                        circle.center.y + circle.radius,
                    );
                }
                Item::EllipseMark { center, rx, ry, .. } => {
                    grow(center.x - rx, center.y - ry);
                    grow(center.x + rx, center.y + ry);
                }
                Item::Dot { at, .. } => grow(at.x, at.y),
            }
        }
        if x0.is_finite() {
            Some((Point2::new(x0, y0), Point2::new(x1, y1)))
        } else {
            None
        }
    }

    /// Serializes the scene. Geometry y grows upward; SVG y grows downward,
    /// so points are reflected across the view box midline.
    pub fn render(&self) -> String {
        let (lo, hi) = self
            .bounds()
            .unwrap_or((Point2::ORIGIN, Point2::new(1.0, 1.0)));
        let span_x = (hi.x - lo.x).max(1e-9);
        let span_y = (hi.y - lo.y).max(1e-9);
        let margin = 0.05 * span_x.max(span_y);
        let extent = span_x.max(span_y) + 2.0 * margin;
        let flip_y = |y: f64| hi.y + lo.y - y;

        let mut out = String::new();
        let _ = write!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
            lo.x - margin,
            lo.y - margin,
            span_x + 2.0 * margin,
            span_y + 2.0 * margin
        );
        for item in &self.items {
            match item {
                Item::Polyline {
                    points,
                    closed,
                    stroke,
                    width_rel,
                    fill,
                } => {
                    let tag = if *closed { "polygon" } else { "polyline" };
                    let mut coords = String::new();
                    for (i, p) in points.iter().enumerate() {
                        if i > 0 {
                            coords.push(' ');
                        }
                        let _ = write!(coords, "{},{}", p.x, flip_y(p.y));
                    }
                    let fill_attr = fill.as_deref().unwrap_or("none");
                    let _ = write!(
                        out,
                        "  <{tag} points=\"{coords}\" fill=\"{fill_attr}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>\n",
                        width_rel * extent
                    );
                }
                Item::CircleMark {
                    circle,
                    stroke,
                    width_rel,
                    fill,
                } => {
                    let fill_attr = fill.as_deref().unwrap_or("none");
                    let _ = write!(
                        out,
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill_attr}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>\n",
                        circle.center.x,
                        flip_y(circle.center.y),
                        circle.radius,
                        width_rel * extent
                    );
                }
                Item::EllipseMark {
                    center,
                    rx,
                    ry,
                    stroke,
                    width_rel,
                    fill,
                } => {
                    let fill_attr = fill.as_deref().unwrap_or("none");
                    let _ = write!(
                        out,
                        "  <ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" fill=\"{fill_attr}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>\n",
                        center.x,
                        flip_y(center.y),
                        rx,
                        ry,
                        width_rel * extent
                    );
                }
                Item::Dot {
                    at,
                    color,
                    radius_rel,
                } => {
                    let _ = write!(
                        out,
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\" stroke=\"none\"/>\n",
                        at.x,
                        flip_y(at.y),
                        radius_rel * extent
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

pub fn render_svg(scene: &Scene, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, scene.render())
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}
