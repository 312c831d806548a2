use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn roundfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roundfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("roundfold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn catalog_output_validates() {
    let out = roundfold(&["catalog", "connected_sum_sphere_bundles", "6", "2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let file = scratch("sum.rf", &stdout(&out));
    let v = roundfold(&["validate", path(&file)]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "valid: m = 6, n = 2, l = 2, image disc\n");
}

#[test]
fn codimension_two_rejected_by_first_criterion() {
    let f = fixture("sum_4_2_2.rf");
    let out = roundfold(&["check", path(&f), "--rule", "thm1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("failed: [Thm 1 case n=2] h2-vanishing"));
    let out = roundfold(&["check", path(&f), "--rule", "thm3", "--start", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("applicable: yes\nrule: Thm 3 case n=2\nstarting set: {0}\n"));
}

#[test]
fn bundle_file_drives_check() {
    let f = fixture("sum_3_2_3.rf");
    let b = scratch("w1.bundle", "[bundle]\norientable = false\nfill = trivial\nw1 0.0 = 1\n");
    let out = roundfold(&["check", path(&f), "--bundle", path(&b), "--rule", "thm1", "--start", "0"]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("w1-vanishing"));
    let out = roundfold(&["check", path(&f), "--bundle", path(&b), "--rule", "thm3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn apply_output_is_a_descriptor() {
    let f = fixture("sum_4_2_2.rf");
    let out = roundfold(&["apply", path(&f), "--fiber", "sphere(1)", "--rule", "thm3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# P-operation by sphere(1) applied to connected_sum_sphere_bundles(4,2,2)\n"));
    assert!(text.contains("# certified by Thm 3 case n=2"));
    let file = scratch("applied.rf", &text);
    let v = roundfold(&["validate", path(&file)]);
    assert_eq!(stdout(&v), "valid: m = 5, n = 2, l = 2, image disc\n");

    let out = roundfold(&["apply", path(&f), "--fiber", "sphere(1)", "--rule", "thm1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("applicable: no\n"));
}

#[test]
fn family_apply_sets_s_triviality() {
    let out = roundfold(&["catalog", "spun_torus_family", "5", "2"]);
    let file = scratch("torus.rf", &stdout(&out));
    let out = roundfold(&["apply", path(&file), "--fiber", "sphere(1)", "--euler", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("S_trivial = true\n"));
    let out = roundfold(&["apply", path(&file), "--fiber", "sphere(2)", "--euler", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn four_manifold_homology() {
    let file = scratch("x.fm", "[fourmanifold]\nfactors = trivial, trivial\nalpha = 0, 1, 0, 0\n");
    let out = roundfold(&["homology", "--four-manifold", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("H_1 = 0\n"));
    assert!(text.contains("H_2 = Z ⊕ Z ⊕ Z\n"));
    assert!(text.contains("total space: #3 S^2×S^3\n"));
    let out = roundfold(&["homology", "--four-manifold", path(&file), "--alpha", "0,2,0,0"]);
    assert!(stdout(&out).contains("H_1 = Z/2\n"));
    assert!(stdout(&out).contains("total space: not simply connected\n"));
}

#[test]
fn json_modes_parse() {
    let f = fixture("sum_6_2_2.rf");
    let fm = scratch("j.fm", "[fourmanifold]\nfactors = trivial\nalpha = 1, 0\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["validate", path(&f)],
        vec!["graph", path(&f), "--degree", "1", "--ring", "z2"],
        vec!["check", path(&f)],
        vec!["apply", path(&f), "--fiber", "torus(1)"],
        vec!["homology", "--four-manifold", path(&fm)],
        vec!["catalog", "special_generic_sphere", "4", "2"],
        vec!["report", "thm8", "4", "6"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend(&args);
        let out = roundfold(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object(), "{args:?}");
    }
    let out = roundfold(&["--json", "graph", path(&f), "--degree", "1", "--ring", "z2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["graph"]["kind"]["kind"], "homology");
    assert_eq!(v["minimal_starting_sets"][0], serde_json::json!([0]));
    let out = roundfold(&["--json", "report", "thm8", "4", "6"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["s_trivial"], Value::Bool(false));
}

#[test]
fn malformed_inputs() {
    let bad = scratch("bad.rf", "[map]\nm = 4\nn = two\n");
    let out = roundfold(&["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(roundfold(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(roundfold(&["graph", path(&bad), "--ring", "q"]).status.code(), Some(2));
    assert_eq!(roundfold(&["check", path(&bad), "--start", "a,b"]).status.code(), Some(2));
    assert_eq!(roundfold(&["report", "thm6", "x"]).status.code(), Some(2));
}
