//! Scenario configs (JSON with a top-level "kind" discriminator) and the
//! per-kind runners. Every runner writes its CSV/serialization artifacts
//! plus an SVG figure into the output directory and returns a one-line
//! summary. All randomness flows from one scenario seed.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use mizel_core::{
    classification_to_csv, classify_curve, exactly_m_search, generate_circle, generate_ellipse,
    generate_fourier_cw, generate_reuleaux, greedy_circle_packing, greedy_shape_packing,
    packing_from_text, packing_to_text, perimeter, probe_circle_intersection, probes_to_csv,
    scan_rectangle_property, validate_packing, witnesses_to_csv, Cell, CellKind, Circle,
    ClassificationParams, CompactSetK, CurveError, CurveMembership, FourierCoeff, Point2,
    PointSetMembership, ProbeError, ProbeFamily, ProbeResult, ProbeTarget, SampledCurve,
    ScanConstraints, ScanReport,
};

use crate::svg::{class_color, render_svg, Scene};

/// Config-class failures exit 2; runtime failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Runtime(msg) => write!(f, "runtime error: {msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<mizel_core::ScanError> for CliError {
    fn from(e: mizel_core::ScanError) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<mizel_core::ClassError> for CliError {
    fn from(e: mizel_core::ClassError) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<mizel_core::PackingError> for CliError {
    fn from(e: mizel_core::PackingError) -> CliError {
        CliError::Config(e.to_string())
    }
}

impl From<ProbeError> for CliError {
    fn from(e: ProbeError) -> CliError {
        match e {
            // An untrusted probe count is a runtime condition, not a bad
            // config: it depends on the packing geometry.
            ProbeError::ResolutionTooLow { .. } => CliError::Runtime(e.to_string()),
            ProbeError::BadParameter(_) => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioConfig {
    Generate(GenerateConfig),
    Scan(ScanConfig),
    Classify(ClassifyConfig),
    Pack(PackConfig),
    Probe(ProbeConfig),
    Search(SearchConfig),
    Render(RenderConfig),
}

impl ScenarioConfig {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ScenarioConfig::Generate(_) => "generate",
            ScenarioConfig::Scan(_) => "scan",
            ScenarioConfig::Classify(_) => "classify",
            ScenarioConfig::Pack(_) => "pack",
            ScenarioConfig::Probe(_) => "probe",
            ScenarioConfig::Search(_) => "search",
            ScenarioConfig::Render(_) => "render",
        }
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| config_err(format!("cannot parse config {}: {e}", path.display())))
}

/// Parametric curve input shared by several scenarios.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Circle {
        radius: f64,
        n: usize,
    },
    Ellipse {
        a: f64,
        b: f64,
        n: usize,
    },
    Reuleaux {
        k: usize,
        d: f64,
        n: usize,
    },
    FourierCw {
        d: f64,
        coeffs: Vec<FourierCoeff>,
        n: usize,
    },
}

impl CurveSpec {
    pub fn build(&self) -> Result<SampledCurve, CliError> {
        Ok(match self {
            CurveSpec::Circle { radius, n } => generate_circle(*radius, *n)?,
            CurveSpec::Ellipse { a, b, n } => generate_ellipse(*a, *b, *n)?,
            CurveSpec::Reuleaux { k, d, n } => generate_reuleaux(*k, *d, *n)?,
            CurveSpec::FourierCw { d, coeffs, n } => generate_fourier_cw(*d, coeffs, *n)?,
        })
    }

    fn label(&self) -> &'static str {
        match self {
            CurveSpec::Circle { .. } => "circle",
            CurveSpec::Ellipse { .. } => "ellipse",
            CurveSpec::Reuleaux { .. } => "reuleaux",
            CurveSpec::FourierCw { .. } => "fourier_cw",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateConfig {
    pub curve: CurveSpec,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalSpec {
    pub target: f64,
    #[serde(default)]
    pub band: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    #[serde(default)]
    pub curve: Option<CurveSpec>,
    /// Curve table file ("# curve ..." header) scanned as a closed curve.
    #[serde(default)]
    pub curve_file: Option<PathBuf>,
    /// Raw point set; membership is distance to the nearest set point.
    #[serde(default)]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub diagonal: Option<DiagonalSpec>,
    #[serde(default)]
    pub max_aspect: Option<f64>,
    #[serde(default)]
    pub max_short_side: Option<f64>,
    /// Absolute membership tolerance. For curve inputs the default is
    /// spacing-scaled instead; see membership_tol_spacing_factor.
    #[serde(default)]
    pub membership_tol: Option<f64>,
    /// Membership tolerance as a multiple of the curve's max sample
    /// spacing (curve inputs only). Default factor: 2.
    #[serde(default)]
    pub membership_tol_spacing_factor: Option<f64>,
    #[serde(default)]
    pub angle_tol: Option<f64>,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub max_witnesses: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyConfig {
    pub curve: CurveSpec,
    /// Tangent disk diameter.
    pub d: f64,
    #[serde(default)]
    pub eps_nbhd: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterSpec {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellSpec {
    Disk,
    Square,
    Ellipse,
}

impl Default for CellSpec {
    fn default() -> Self {
        CellSpec::Disk
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackConfig {
    #[serde(default)]
    pub outer: Option<OuterSpec>,
    #[serde(default)]
    pub cell: CellSpec,
    pub min_r: f64,
    pub max_count: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomProbesSpec {
    pub count: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    pub packing_file: PathBuf,
    #[serde(default)]
    pub probes: Option<Vec<ProbeSpec>>,
    #[serde(default)]
    pub random: Option<RandomProbesSpec>,
    #[serde(default)]
    pub resolution: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchTargetSpec {
    #[serde(default)]
    pub curve: Option<CurveSpec>,
    #[serde(default)]
    pub packing_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    Random,
    TangentStructured,
}

impl Default for FamilySpec {
    fn default() -> Self {
        FamilySpec::TangentStructured
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub target: SearchTargetSpec,
    pub m: usize,
    #[serde(default)]
    pub family: FamilySpec,
    pub budget: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderConfig {
    /// A curve table or packing text file, recognized by its header.
    pub input: PathBuf,
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn read_packing(path: &Path) -> Result<CompactSetK, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_err(format!("cannot read packing {}: {e}", path.display())))?;
    Ok(packing_from_text(&text)?)
}

fn curve_scene(curve: &SampledCurve, stroke: &str) -> Scene {
    let mut scene = Scene::new();
    scene.add_polyline(curve.points(), true, stroke);
    scene
}

fn packing_scene(k: &CompactSetK) -> Scene {
    let mut scene = Scene::new();
    scene.add_circle(k.outer(), "#333333", None);
    for cell in k.cells() {
        match cell {
            Cell::Disk(c) => scene.add_circle(c, "#555555", Some("#d9d9d9")),
            Cell::Square { center, half } => {
                let corners = [
                    Point2::new(center.x - half, center.y - half),
                    Point2::new(center.x + half, center.y - half),
                    Point2::new(center.x + half, center.y + half),
                    Point2::new(center.x - half, center.y + half),
                ];
                scene.add_filled_polygon(&corners, "#555555", "#d9d9d9");
            }
            Cell::Ellipse { center, a, b } => {
                scene.add_ellipse(center, a, b, "#555555", Some("#d9d9d9"));
            }
        }
    }
    scene
}

pub fn run_generate(
    cfg: &GenerateConfig,
    out: &Path,
    _seed: Option<u64>,
    verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let curve = cfg.curve.build()?;
    let name = cfg.name.clone().unwrap_or_else(|| "curve".to_string());
    write_artifact(out, &format!("{name}.txt"), &curve.to_table())?;
    let scene = curve_scene(&curve, "#1f77b4");
    render_svg(&scene, &out.join(format!("{name}.svg")))?;
    if verbose {
        eprintln!(
            "curve bounds: {:?}, max spacing {}",
            curve.bounding_box(),
            curve.max_spacing()
        );
    }
    Ok(format!(
        "generate: {} n={} perimeter={:.6}",
        cfg.curve.label(),
        curve.len(),
        perimeter(&curve)
    ))
}

enum ScanInput {
    Curve(SampledCurve),
    Points(Vec<Point2>),
}

fn scan_input(cfg: &ScanConfig) -> Result<ScanInput, CliError> {
    let sources =
        cfg.curve.is_some() as u8 + cfg.curve_file.is_some() as u8 + cfg.points.is_some() as u8;
    if sources != 1 {
        return Err(config_err(
            "scan needs exactly one of: curve, curve_file, points",
        ));
    }
    if let Some(spec) = &cfg.curve {
        return Ok(ScanInput::Curve(spec.build()?));
    }
    if let Some(path) = &cfg.curve_file {
        let text = fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read curve {}: {e}", path.display())))?;
        return Ok(ScanInput::Curve(SampledCurve::from_table(&text)?));
    }
    let raw = cfg.points.as_ref().expect("source counted above");
    let points: Vec<Point2> = raw.iter().map(|&[x, y]| Point2::new(x, y)).collect();
    if points.len() < 3 {
        return Err(config_err("scan needs at least 3 points"));
    }
    Ok(ScanInput::Points(points))
}

fn scan_constraints(cfg: &ScanConfig, input: &ScanInput) -> Result<ScanConstraints, CliError> {
    let mtol = match (cfg.membership_tol, cfg.membership_tol_spacing_factor, input) {
        (Some(_), Some(_), _) => {
            return Err(config_err(
                "membership_tol and membership_tol_spacing_factor are mutually exclusive",
            ))
        }
        (Some(t), None, _) => t,
        (None, factor, ScanInput::Curve(curve)) => factor.unwrap_or(2.0) * curve.max_spacing(),
        (None, Some(_), ScanInput::Points(_)) => {
            return Err(config_err(
                "spacing-scaled tolerance needs a curve input; raw points have no spacing",
            ))
        }
        (None, None, ScanInput::Points(_)) => {
            return Err(config_err(
                "raw point scans need an explicit membership_tol",
            ))
        }
    };
    let mut constraints = ScanConstraints::new(mtol);
    if let Some(diag) = &cfg.diagonal {
        constraints = constraints.with_diagonal(diag.target, diag.band.unwrap_or(mtol));
    }
    if let Some(eps) = cfg.max_aspect {
        constraints = constraints.with_max_aspect(eps);
    }
    if let Some(s) = cfg.max_short_side {
        constraints = constraints.with_max_short_side(s);
    }
    if let Some(tol) = cfg.angle_tol {
        constraints = constraints.with_angle_tol(tol);
    }
    if let Some(cap) = cfg.max_witnesses {
        constraints = constraints.with_max_witnesses(cap);
    }
    Ok(constraints)
}

/// Witnesses drawn into the scan figure; the CSV always holds all retained
/// witnesses.
const DRAWN_WITNESS_CAP: usize = 50;

pub fn run_scan(
    cfg: &ScanConfig,
    out: &Path,
    _seed: Option<u64>,
    verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let input = scan_input(cfg)?;
    let constraints = scan_constraints(cfg, &input)?;
    let report: ScanReport;
    let mut scene;
    match &input {
        ScanInput::Curve(curve) => {
            let membership = CurveMembership::new(curve);
            report =
                scan_rectangle_property(curve.points(), &membership, &constraints, cfg.budget)?;
            scene = curve_scene(curve, "#1f77b4");
        }
        ScanInput::Points(points) => {
            let membership = PointSetMembership::new(points.clone());
            report = scan_rectangle_property(points, &membership, &constraints, cfg.budget)?;
            scene = Scene::new();
            for p in points {
                scene.add_dot(*p, "#1f77b4");
            }
        }
    }
    for w in report.violations.iter().take(DRAWN_WITNESS_CAP) {
        scene.add_witness_rectangle([w.a, w.b, w.c, w.fourth], "#d62728");
    }
    write_artifact(out, "witnesses.csv", &witnesses_to_csv(&report.violations))?;
    render_svg(&scene, &out.join("scan.svg"))?;
    if verbose {
        for w in report.violations.iter().take(5) {
            eprintln!(
                "violation: fourth_distance={} diagonal={} aspect={}",
                w.fourth_distance, w.metrics.diagonal, w.metrics.aspect
            );
        }
    }
    Ok(format!(
        "scan: violations={} satisfied={} triples={} truncated={} budget_exhausted={}",
        report.violation_count,
        report.satisfied_count,
        report.triples_examined,
        report.truncated,
        report.budget_exhausted
    ))
}

pub fn run_classify(
    cfg: &ClassifyConfig,
    out: &Path,
    _seed: Option<u64>,
    verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let curve = cfg.curve.build()?;
    let mut params = ClassificationParams::for_curve(&curve, cfg.d);
    if let Some(eps) = cfg.eps_nbhd {
        params.eps_nbhd = eps;
    }
    let report = classify_curve(&curve, &params)?;
    write_artifact(
        out,
        "classification.csv",
        &classification_to_csv(&curve, &report),
    )?;

    let mut scene = Scene::new();
    scene.add_polyline(curve.points(), true, "#bbbbbb");
    for i in 0..curve.len() {
        scene.add_dot(curve.point(i), class_color(report.labels[i]));
    }
    render_svg(&scene, &out.join("classify.svg"))?;
    if verbose {
        eprintln!(
            "window eps_nbhd={} tangent disk d={}",
            params.eps_nbhd, params.d
        );
    }
    let c = &report.counts;
    Ok(format!(
        "classify: a={} b={} ab={} ba={} c={} unresolved={} partition_ok={}",
        c.a, c.b, c.ab, c.ba, c.c, c.unresolved, report.partition_ok
    ))
}

pub fn run_pack(
    cfg: &PackConfig,
    out: &Path,
    seed_flag: Option<u64>,
    verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let outer = match &cfg.outer {
        Some(o) => {
            if !(o.r > 0.0 && o.r.is_finite()) {
                return Err(config_err(format!(
                    "outer radius must be positive, got {}",
                    o.r
                )));
            }
            Circle::new(Point2::new(o.cx, o.cy), o.r)
        }
        None => Circle::new(Point2::ORIGIN, 1.0),
    };
    let seed = seed_flag.or(cfg.seed).unwrap_or(0);
    let k = match cfg.cell {
        CellSpec::Disk => CompactSetK::Disks(greedy_circle_packing(
            outer,
            cfg.min_r,
            cfg.max_count,
            seed,
        )?),
        CellSpec::Square => CompactSetK::Shapes(greedy_shape_packing(
            outer,
            CellKind::Square,
            cfg.min_r,
            cfg.max_count,
            seed,
        )?),
        CellSpec::Ellipse => CompactSetK::Shapes(greedy_shape_packing(
            outer,
            CellKind::Ellipse,
            cfg.min_r,
            cfg.max_count,
            seed,
        )?),
    };
    validate_packing(&k).map_err(|e| CliError::Runtime(e.to_string()))?;
    write_artifact(out, "packing.txt", &packing_to_text(&k))?;
    render_svg(&packing_scene(&k), &out.join("packing.svg"))?;
    if verbose {
        eprintln!("packing seed {seed}, outer radius {}", outer.radius);
    }
    Ok(format!(
        "pack: cells={} coverage={:.4} seed={} valid=true",
        k.depth(),
        mizel_core::coverage_fraction(&k),
        seed
    ))
}

fn probe_color(result: &ProbeResult) -> &'static str {
    if result.has_full_arc {
        "#2ca02c"
    } else if result.components > 0 {
        "#1f77b4"
    } else {
        "#7f7f7f"
    }
}

pub fn run_probe(
    cfg: &ProbeConfig,
    out: &Path,
    seed_flag: Option<u64>,
    verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let k = read_packing(&cfg.packing_file)?;
    let resolution = cfg.resolution.unwrap_or(3600);
    let probes: Vec<Circle> = match (&cfg.probes, &cfg.random) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(config_err("probe needs exactly one of: probes, random"))
        }
        (Some(list), None) => list
            .iter()
            .map(|p| {
                if !(p.r > 0.0 && p.r.is_finite()) {
                    return Err(config_err(format!(
                        "probe radius must be positive, got {}",
                        p.r
                    )));
                }
                Ok(Circle::new(Point2::new(p.cx, p.cy), p.r))
            })
            .collect::<Result<_, _>>()?,
        (None, Some(random)) => {
            use rand::{Rng, SeedableRng};
            let seed = seed_flag.or(cfg.seed).unwrap_or(0);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let outer = k.outer();
            let span = 1.5 * outer.radius;
            (0..random.count)
                .map(|_| {
                    let cx = outer.center.x + rng.random_range(-span..span);
                    let cy = outer.center.y + rng.random_range(-span..span);
                    let r = rng.random_range(0.05 * outer.radius..1.2 * outer.radius);
                    Circle::new(Point2::new(cx, cy), r)
                })
                .collect()
        }
    };
    let mut rows = Vec::with_capacity(probes.len());
    for probe in &probes {
        let result = probe_circle_intersection(&k, *probe, resolution)?;
        rows.push((*probe, result));
    }
    write_artifact(out, "probes.csv", &probes_to_csv(&rows))?;

    let mut scene = packing_scene(&k);
    for (probe, result) in &rows {
        scene.add_circle(*probe, probe_color(result), None);
    }
    render_svg(&scene, &out.join("probe.svg"))?;
    if verbose {
        for (probe, result) in &rows {
            eprintln!(
                "probe r={} -> components={} full_arc={}",
                probe.radius, result.components, result.has_full_arc
            );
        }
    }
    let full = rows.iter().filter(|(_, r)| r.has_full_arc).count();
    let empty = rows.iter().filter(|(_, r)| r.components == 0).count();
    Ok(format!(
        "probe: {} probes, {} full-arc, {} empty",
        rows.len(),
        full,
        empty
    ))
}

pub fn run_search(
    cfg: &SearchConfig,
    out: &Path,
    seed_flag: Option<u64>,
    verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let seed = seed_flag.or(cfg.seed).unwrap_or(0);
    let family = match cfg.family {
        FamilySpec::Random => ProbeFamily::Random,
        FamilySpec::TangentStructured => ProbeFamily::TangentStructured,
    };
    enum Target {
        Curve(SampledCurve),
        Compact(CompactSetK),
    }
    let target = match (&cfg.target.curve, &cfg.target.packing_file) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(config_err(
                "search target needs exactly one of: curve, packing_file",
            ))
        }
        (Some(spec), None) => Target::Curve(spec.build()?),
        (None, Some(path)) => Target::Compact(read_packing(path)?),
    };
    let outcome = match &target {
        Target::Curve(curve) => {
            exactly_m_search(ProbeTarget::Curve(curve), cfg.m, family, cfg.budget, seed)?
        }
        Target::Compact(k) => {
            exactly_m_search(ProbeTarget::Compact(k), cfg.m, family, cfg.budget, seed)?
        }
    };

    let rows: Vec<(Circle, ProbeResult)> = outcome.witness.iter().copied().collect();
    write_artifact(out, "search.csv", &probes_to_csv(&rows))?;

    let mut scene = match &target {
        Target::Curve(curve) => curve_scene(curve, "#1f77b4"),
        Target::Compact(k) => packing_scene(k),
    };
    if let Some((probe, _)) = &outcome.witness {
        scene.add_circle(*probe, "#d62728", None);
    }
    render_svg(&scene, &out.join("search.svg"))?;
    if verbose {
        eprintln!("family {:?}, budget {}", family, cfg.budget);
    }
    Ok(match &outcome.witness {
        Some((probe, result)) => format!(
            "search: found m={} probe at ({}, {}) r={} after {} probes (full_arc={})",
            cfg.m,
            probe.center.x,
            probe.center.y,
            probe.radius,
            outcome.probes_used,
            result.has_full_arc
        ),
        None => format!(
            "search: none found for m={} within budget {} (absence is not a proof)",
            cfg.m, outcome.probes_used
        ),
    })
}

pub fn run_render(
    cfg: &RenderConfig,
    out: &Path,
    _seed: Option<u64>,
    _verbose: bool,
) -> Result<String, CliError> {
    ensure_out_dir(out)?;
    let text = fs::read_to_string(&cfg.input)
        .map_err(|e| config_err(format!("cannot read {}: {e}", cfg.input.display())))?;
    let head = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let scene = if head.starts_with("# packing") {
        packing_scene(&packing_from_text(&text)?)
    } else if head.starts_with("# curve") {
        curve_scene(&SampledCurve::from_table(&text)?, "#1f77b4")
    } else {
        return Err(config_err(format!(
            "unrecognized input header in {}: {head:?}",
            cfg.input.display()
        )));
    };
    let path = out.join("render.svg");
    render_svg(&scene, &path)?;
    Ok(format!(
        "render: {} -> {}",
        cfg.input.display(),
        path.display()
    ))
}
