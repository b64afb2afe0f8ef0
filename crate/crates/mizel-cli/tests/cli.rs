//! End-to-end process tests: exit codes, artifact layout, byte-level
//! determinism of CSV outputs, and structural validity of emitted SVG.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mizel")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(subcommand: &str, config: &Path, out: &Path) -> Output {
    Command::new(bin())
        .arg(subcommand)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

/// Minimal structural validation: tags balance, numeric attributes are
/// finite (no NaN/inf tokens anywhere in the document).
fn assert_svg_well_formed(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("<svg "), "missing svg root");
    assert!(text.contains("xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(text.contains("version=\"1.1\""));
    assert!(
        !text.contains("NaN") && !text.contains("inf"),
        "non-finite attribute"
    );
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text.as_str();
    while let Some(start) = rest.find('<') {
        let tail = &rest[start + 1..];
        let end = tail.find('>').expect("closed tag");
        let tag = &tail[..end];
        if let Some(name) = tag.strip_prefix('/') {
            assert_eq!(stack.pop().as_deref(), Some(name.trim()), "tag mismatch");
        } else if !tag.ends_with('/') {
            let name = tag.split_whitespace().next().unwrap().to_string();
            stack.push(name);
        }
        rest = &tail[end + 1..];
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn generate_writes_table_and_figure() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "gen.json",
        r#"{"kind":"generate","curve":{"shape":"circle","radius":1.0,"n":128}}"#,
    );
    let out = dir.path().join("out");
    let output = run("generate", &cfg, &out);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("generate: circle n=128"));
    let table = fs::read_to_string(out.join("curve.txt")).unwrap();
    assert!(table.starts_with("# curve n=128 closed=1 ccw=1"));
    assert_eq!(table.lines().count(), 129);
    assert_svg_well_formed(&out.join("curve.svg"));
}

#[test]
fn clean_scan_reports_zero_violations() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "scan.json",
        r#"{"kind":"scan","curve":{"shape":"circle","radius":0.5,"n":256},"diagonal":{"target":1.0}}"#,
    );
    let out = dir.path().join("out");
    let output = run("scan", &cfg, &out);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("violations=0"), "stdout: {stdout}");
    let csv = fs::read_to_string(out.join("witnesses.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1, "header only");
    assert_svg_well_formed(&out.join("scan.svg"));
}

#[test]
fn point_set_scan_finds_the_missing_corner() {
    // Unit square with an absent fourth corner plus a far decoy: exactly
    // one violating triple, fourth corner (1, 1) at distance 1.
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "scan.json",
        r#"{"kind":"scan","points":[[0,0],[1,0],[0,1],[4,4]],"membership_tol":1e-6}"#,
    );
    let out = dir.path().join("out");
    let output = run("scan", &cfg, &out);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("violations=1"), "stdout: {stdout}");
    let csv = fs::read_to_string(out.join("witnesses.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "ax,ay,bx,by,cx,cy,sx,sy,fourth_distance,diagonal,short,long,aspect"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("0,1,0,0,1,0,1,1,1,"), "row: {row}");
}

#[test]
fn curve_table_is_accepted_as_scan_input() {
    let dir = TempDir::new().unwrap();
    let gen = write_config(
        dir.path(),
        "gen.json",
        r#"{"kind":"generate","curve":{"shape":"circle","radius":0.5,"n":128}}"#,
    );
    let gen_out = dir.path().join("gen");
    assert!(run("generate", &gen, &gen_out).status.success());

    let scan = write_config(
        dir.path(),
        "scan.json",
        &format!(
            r#"{{"kind":"scan","curve_file":{:?},"diagonal":{{"target":1.0}}}}"#,
            gen_out.join("curve.txt")
        ),
    );
    let out = dir.path().join("out");
    let output = run("scan", &scan, &out);
    assert!(output.status.success());
    assert!(String::from_utf8(output.stdout)
        .unwrap()
        .contains("violations=0"));
}

#[test]
fn identical_config_and_seed_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let pack_cfg = write_config(
        dir.path(),
        "pack.json",
        r#"{"kind":"pack","min_r":0.05,"max_count":48,"seed":42}"#,
    );
    let scan_cfg = write_config(
        dir.path(),
        "scan.json",
        r#"{"kind":"scan","points":[[0,0],[1,0],[0,1],[4,4],[2.5,0.25],[3,1]],"membership_tol":1e-6}"#,
    );
    let cls_cfg = write_config(
        dir.path(),
        "cls.json",
        r#"{"kind":"classify","curve":{"shape":"ellipse","a":2.0,"b":1.0,"n":256},"d":2.0}"#,
    );
    for (sub, cfg, artifact) in [
        ("pack", &pack_cfg, "packing.txt"),
        ("scan", &scan_cfg, "witnesses.csv"),
        ("classify", &cls_cfg, "classification.csv"),
    ] {
        let out_a = dir.path().join(format!("{sub}_a"));
        let out_b = dir.path().join(format!("{sub}_b"));
        assert!(run(sub, cfg, &out_a).status.success());
        assert!(run(sub, cfg, &out_b).status.success());
        let a = fs::read(out_a.join(artifact)).unwrap();
        let b = fs::read(out_b.join(artifact)).unwrap();
        assert_eq!(a, b, "{artifact} bytes differ between identical runs");
        assert!(!a.is_empty());
    }
}

#[test]
fn seed_flag_overrides_config_seed() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "pack.json",
        r#"{"kind":"pack","min_r":0.05,"max_count":32,"seed":1}"#,
    );
    let out_base = dir.path().join("base");
    let out_override = dir.path().join("override");
    assert!(run("pack", &cfg, &out_base).status.success());
    let output = Command::new(bin())
        .args(["pack", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_override)
        .args(["--seed", "2"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let base = fs::read_to_string(out_base.join("packing.txt")).unwrap();
    let over = fs::read_to_string(out_override.join("packing.txt")).unwrap();
    assert!(base.starts_with("# packing kind=disks"));
    assert_ne!(base, over, "different seeds must give different packings");
}

#[test]
fn probe_rows_are_exact_for_known_probes() {
    let dir = TempDir::new().unwrap();
    let pack_cfg = write_config(
        dir.path(),
        "pack.json",
        r#"{"kind":"pack","min_r":0.05,"max_count":64,"seed":42}"#,
    );
    let pack_out = dir.path().join("pack");
    assert!(run("pack", &pack_cfg, &pack_out).status.success());

    let probe_cfg = write_config(
        dir.path(),
        "probe.json",
        &format!(
            r#"{{"kind":"probe","packing_file":{:?},"probes":[{{"cx":0.0,"cy":0.0,"r":1.0}},{{"cx":5.0,"cy":5.0,"r":0.25}}]}}"#,
            pack_out.join("packing.txt")
        ),
    );
    let out = dir.path().join("out");
    let output = run("probe", &probe_cfg, &out);
    assert!(output.status.success());
    let csv = fs::read_to_string(out.join("probes.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "cx,cy,radius,components,full_arc");
    assert_eq!(lines[1], "0,0,1,1,true", "outer circle is one full arc");
    assert_eq!(lines[2], "5,5,0.25,0,false", "distant probe misses the set");
    assert_svg_well_formed(&out.join("probe.svg"));
}

#[test]
fn search_reports_absence_without_witness_rows() {
    let dir = TempDir::new().unwrap();
    let pack_cfg = write_config(
        dir.path(),
        "pack.json",
        r#"{"kind":"pack","min_r":0.08,"max_count":16,"seed":7}"#,
    );
    let pack_out = dir.path().join("pack");
    assert!(run("pack", &pack_cfg, &pack_out).status.success());

    let search_cfg = write_config(
        dir.path(),
        "search.json",
        &format!(
            r#"{{"kind":"search","target":{{"packing_file":{:?}}},"m":3,"family":"random","budget":60,"seed":5}}"#,
            pack_out.join("packing.txt")
        ),
    );
    let out = dir.path().join("out");
    let output = run("search", &search_cfg, &out);
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("none found"), "stdout: {stdout}");
    assert!(stdout.contains("not a proof"));
    let csv = fs::read_to_string(out.join("search.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1, "header only");
}

#[test]
fn render_reproduces_figures_from_artifacts() {
    let dir = TempDir::new().unwrap();
    let gen_cfg = write_config(
        dir.path(),
        "gen.json",
        r#"{"kind":"generate","curve":{"shape":"reuleaux","k":3,"d":1.0,"n":300}}"#,
    );
    let gen_out = dir.path().join("gen");
    assert!(run("generate", &gen_cfg, &gen_out).status.success());

    let render_cfg = write_config(
        dir.path(),
        "render.json",
        &format!(
            r#"{{"kind":"render","input":{:?}}}"#,
            gen_out.join("curve.txt")
        ),
    );
    let out = dir.path().join("out");
    assert!(run("render", &render_cfg, &out).status.success());
    assert_svg_well_formed(&out.join("render.svg"));
}

#[test]
fn classify_figure_uses_the_class_palette() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "cls.json",
        r#"{"kind":"classify","curve":{"shape":"ellipse","a":2.0,"b":1.0,"n":256},"d":2.0}"#,
    );
    let out = dir.path().join("out");
    let output = run("classify", &cfg, &out);
    assert!(output.status.success());
    let svg = fs::read_to_string(out.join("classify.svg")).unwrap();
    assert!(svg.contains("#d62728"), "A color present");
    assert!(svg.contains("#1f77b4"), "B color present");
    let csv = fs::read_to_string(out.join("classification.csv")).unwrap();
    assert!(csv.lines().any(|l| l.contains(",A,")));
    assert!(csv.lines().any(|l| l.contains(",B,")));
    assert_svg_well_formed(&out.join("classify.svg"));
}

#[test]
fn config_failures_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");

    let malformed = write_config(dir.path(), "bad.json", "{broken");
    assert_eq!(run("scan", &malformed, &out).status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    assert_eq!(run("scan", &missing, &out).status.code(), Some(2));

    let scan_cfg = write_config(
        dir.path(),
        "scan.json",
        r#"{"kind":"scan","points":[[0,0],[1,0],[0,1]],"membership_tol":1e-6}"#,
    );
    let mismatch = run("classify", &scan_cfg, &out);
    assert_eq!(mismatch.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("does not match"));

    let bad_param = write_config(
        dir.path(),
        "neg.json",
        r#"{"kind":"generate","curve":{"shape":"circle","radius":-1.0,"n":128}}"#,
    );
    let output = run("generate", &bad_param, &out);
    assert_eq!(output.status.code(), Some(2));
    assert!(!output.stderr.is_empty(), "diagnostic on stderr");

    let ambiguous = write_config(
        dir.path(),
        "ambig.json",
        r#"{"kind":"scan","points":[[0,0],[1,0],[0,1]],"curve":{"shape":"circle","radius":1.0,"n":128},"membership_tol":1e-6}"#,
    );
    assert_eq!(run("scan", &ambiguous, &out).status.code(), Some(2));
}

#[test]
fn runtime_failures_exit_3() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "gen.json",
        r#"{"kind":"generate","curve":{"shape":"circle","radius":1.0,"n":128}}"#,
    );
    // Output path blocked by an existing file.
    let blocked = dir.path().join("blocked");
    fs::write(&blocked, "in the way").unwrap();
    let output = run("generate", &cfg, &blocked);
    assert_eq!(output.status.code(), Some(3));
    assert!(!output.stderr.is_empty());
}
