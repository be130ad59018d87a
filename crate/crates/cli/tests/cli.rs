use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use tempfile::TempDir;
use twder::{FieldCtx, Matrix, Report};

fn twder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const D6: [&str; 6] = ["--group", "dihedral:3", "--field", "3^2", "--cocycle", "alpha3"];

/// Runs `cmd` on D6 over F9 with alpha3.
fn d6(cmd: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd];
    args.extend(D6);
    args.extend(extra);
    twder(&args)
}

fn write_map(dir: &TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    format!("@{}", path.display())
}

fn read_report(path: &Path) -> Report {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn d6_report_with_oracle() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = d6("report", &["--oracle", "--bases", "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("dim Der = 4, dim Inn = 3, dim Z = 3, dim HH^1 = 1"));
    let report = read_report(&out);
    assert_eq!((report.dims.der, report.dims.inn, report.dims.center, report.dims.hh1), (4, 3, 3, 1));
    assert_eq!(report.cross_checks.len(), 3);
    assert!(report.cross_checks.iter().all(|c| c.agrees));
    assert!(report.regime.p_divides_order && report.regime.p_divides_n == Some(true));
    let bases = report.bases.as_ref().unwrap();
    assert_eq!(bases.der.len(), 4);
    assert_eq!(bases.hh1.len(), 1);
    let again: Report = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(again, report);
}

#[test]
fn d12_report_flags_quoted_value() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = twder(&[
        "report", "--group", "dihedral:6", "--field", "3^2", "--cocycle", "alpha1", "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = read_report(&out);
    assert_eq!(report.dims.der, 12);
    assert_eq!(report.dims.hh1, 3);
    assert!(report.warnings.iter().any(|w| w.contains("3n' = 9")));
}

#[test]
fn p_regular_abelian_report() {
    let o = twder(&["report", "--group", "abelian:5", "--field", "3", "--cocycle", "trivial"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim Der = 0, dim Inn = 0, dim Z = 5, dim HH^1 = 0"));
}

#[test]
fn characteristic_two_sign_cocycle_warns() {
    let o = twder(&["report", "--group", "dihedral:3", "--field", "2", "--cocycle", "alpha3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("collapses to the trivial cocycle"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(twder(&["report", "--group", "cyclic:3", "--field", "3"]).status.code(), Some(1));
    assert_eq!(twder(&["report", "--group", "dihedral:3", "--field", "4"]).status.code(), Some(1));
    assert_eq!(
        twder(&["report", "--group", "dihedral:3", "--field", "3", "--cocycle", "alpha1"]).status.code(),
        Some(1)
    );
    assert_eq!(twder(&["report", "--field", "3"]).status.code(), Some(1));
    assert_eq!(twder(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(twder(&["--help"]).status.code(), Some(0));
}

#[test]
fn group_and_cocycle_files() {
    let dir = TempDir::new().unwrap();
    let group = write_map(&dir, "g.json", r#"{"kind": "abelian", "orders": [2, 2]}"#);
    let cocycle = write_map(
        &dir,
        "c.json",
        r#"{"kind": "table", "entries": [["1","1","1","1"],["1","1","1","1"],["1","2","1","2"],["1","2","1","2"]]}"#,
    );
    let o = twder(&["report", "--group", &group, "--field", "3", "--cocycle", &cocycle]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("dim HH^1 = 0"));
}

#[test]
fn export_generators_csv_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.csv");
    let o = d6("export-matrix", &["--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let f = Arc::new(FieldCtx::new(3, 2, None).unwrap());
    let m = Matrix::from_csv(&f, &std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((m.rows(), m.cols()), (18, 12));
    assert_eq!(m.kernel_basis().len(), 4);
}

#[test]
fn export_closed_form_json() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    let o = twder(&[
        "export-matrix", "--group", "dihedral:6", "--field", "3^2", "--cocycle", "alpha1", "--out",
        out.to_str().unwrap(), "--format", "json", "--which", "closed-form",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let f = Arc::new(FieldCtx::new(3, 2, None).unwrap());
    let json = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let m = Matrix::from_json(&f, &json).unwrap();
    assert_eq!(m.kernel_basis().len(), 12);
}

#[test]
fn export_closed_form_needs_dihedral() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.csv");
    let o = twder(&[
        "export-matrix", "--group", "abelian:3", "--field", "3", "--out", out.to_str().unwrap(), "--which",
        "closed-form",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

fn check(dir: &TempDir, json: &str) -> Output {
    let map = write_map(dir, "f.json", json);
    d6("check", &["--map", &map])
}

#[test]
fn check_inner_derivation() {
    let dir = TempDir::new().unwrap();
    let o = check(&dir, r#"{"f": [{"r*s": "-1", "r^2*s": "1"}, {}]}"#);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("accepted") && s.contains("inner: true"), "{s}");
}

#[test]
fn check_outer_derivation() {
    let dir = TempDir::new().unwrap();
    let o = check(&dir, r#"{"f": [{"e": "-1", "r^2": "1"}, {}]}"#);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("accepted") && s.contains("inner: false"), "{s}");
}

#[test]
fn check_accepts_field_serialization() {
    let dir = TempDir::new().unwrap();
    let o = check(&dir, r#"{"f": [{"e": "20", "r^2": "10"}, {}]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("inner: false"));
}

#[test]
fn check_rejects_constant_map() {
    let dir = TempDir::new().unwrap();
    let o = check(&dir, r#"{"f": [{"e": "1"}, {}]}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("rejected"));
}

#[test]
fn check_malformed_map() {
    let dir = TempDir::new().unwrap();
    assert_eq!(check(&dir, r#"{"f": [{"q": "1"}, {}]}"#).status.code(), Some(1));
    assert_eq!(check(&dir, r#"{"f": [{}]}"#).status.code(), Some(1));
    assert_eq!(check(&dir, "not json").status.code(), Some(1));
}
