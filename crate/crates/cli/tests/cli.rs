use std::path::Path;
use std::process::{Command, Output};

use cy_doubling::export::record_from_json;
use cy_doubling::{invariant_record, Catalog};

fn cydouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cydouble")).env_remove("CY_CATALOG").args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_prints_seventeen_rows() {
    let o = cydouble(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 17);
    assert!(text.lines().next().unwrap().starts_with("1-1 "));
    assert!(text.lines().last().unwrap().starts_with("1-17 "));
}

#[test]
fn list_filters() {
    let o = cydouble(&["list", "1-8", "1-9"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    assert_eq!(cydouble(&["list", "2-3"]).status.code(), Some(2));
}

#[test]
fn invariants_text_and_json() {
    let o = cydouble(&["invariants", "1-4"]);
    let text = stdout(&o);
    assert!(text.contains("cubic   (16,8,-56,-164)"));
    assert!(text.contains("lambda  1920"));
    let o = cydouble(&["invariants", "1-17", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lambda"], 4320);
    assert_eq!(cydouble(&["invariants", "9-9"]).status.code(), Some(2));
}

#[test]
fn invariants_on_unpublished_rows_needs_force() {
    assert_eq!(cydouble(&["invariants", "1-5"]).status.code(), Some(2));
    let o = cydouble(&["invariants", "1-5", "--force"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hodge   (2,52)"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(cydouble(&["verify"]).status.code(), Some(0));
    assert_eq!(cydouble(&["verify", "--strict"]).status.code(), Some(1));
}

#[test]
fn verify_flags_undocumented_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let mut cat = Catalog::bundled();
    cat.known_discrepancies.retain(|d| d.id != "1-10");
    let path = dir.path().join("catalog.json");
    std::fs::write(&path, cat.to_json_string()).unwrap();
    let o = cydouble(&["verify", "--catalog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cydouble")).env("CY_CATALOG", &path).arg("list").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse"));
}

#[test]
fn compare_verdicts() {
    let o = cydouble(&["compare", "1-2", "1-17", "--bound", "10"]);
    assert!(stdout(&o).contains("DistinctByLambda(540, 4320)"));
    let o = cydouble(&["compare", "1-4", "1-4", "--bound", "1"]);
    assert!(stdout(&o).contains("EquivalentWitness([[1, 0], [0, 1]])"));
    let o = cydouble(&["compare", "1-12", "1-14"]);
    assert!(stdout(&o).contains("DistinctByLambda(208516, 3440828)"));
    assert_eq!(cydouble(&["compare", "1-12", "7-7"]).status.code(), Some(2));
}

#[test]
fn compare_output_ignores_jobs() {
    let one = cydouble(&["compare", "1-9", "1-9", "--bound", "3", "--jobs", "1"]);
    let many = cydouble(&["compare", "1-9", "1-9", "--bound", "3", "--jobs", "4"]);
    assert_eq!(one.stdout, many.stdout);
}

fn export(dir: &Path, format: &str, extra: &[&str]) -> (Output, String) {
    let out = dir.join(format!("table.{format}"));
    let mut args = vec!["export", "--format", format, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = cydouble(&args);
    let body = std::fs::read_to_string(&out).unwrap_or_default();
    (o, body)
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let (o, md) = export(dir.path(), "md", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(md.contains("| 1-9 | (2,44) | (36,18,-306,-904) | 5529560 |"));

    let (_, csv) = export(dir.path(), "csv", &[]);
    assert_eq!(csv.lines().count(), 9);
    assert_eq!(csv.lines().next().unwrap(), "id,h11,h21,c30,c21,c12,c03,ker_a,ker_b,lambda");
    assert!(csv.contains("1-2,2,86,8,4,0,0,3,-7,540"));

    let (_, json) = export(dir.path(), "json", &[]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let cat = Catalog::bundled();
    for item in v.as_array().unwrap() {
        let r = record_from_json(item).unwrap();
        assert_eq!(r, invariant_record(cat.get(&r.id).unwrap()).unwrap());
    }

    let (o, _) = export(dir.path(), "xml", &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_is_deterministic_and_meta_is_separate() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (_, first) = export(a.path(), "json", &[]);
    let (_, second) = export(b.path(), "json", &["--meta"]);
    assert_eq!(first, second);
    assert!(!a.path().join("table.json.meta.json").exists());
    let meta = std::fs::read_to_string(b.path().join("table.json.meta.json")).unwrap();
    assert!(meta.contains("generated_unix"));
}

#[test]
fn all_rows_export() {
    let dir = tempfile::tempdir().unwrap();
    let (_, csv) = export(dir.path(), "csv", &["--all"]);
    assert_eq!(csv.lines().count(), 18);
}

#[test]
fn show_row() {
    let o = cydouble(&["show", "1-12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tensor_provenance"], "inverted");
    assert_eq!(v["tensor"], serde_json::json!([16, 0, -256, -44]));
}
