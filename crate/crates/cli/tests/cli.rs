//! End-to-end tests of the command-line interface, including the exit-code
//! contract: 0 success, 1 negative answer, 2 input error, 3 budget
//! exhaustion / indeterminate.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_enriques"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn make_type(dir: &tempfile::TempDir, spec: &str, name: &str) -> PathBuf {
    let out = run(&["make", spec]);
    assert_eq!(out.status.code(), Some(0));
    write_file(dir, name, &stdout(&out))
}

#[test]
fn make_validate_info_values() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = make_type(&dir, "A:2", "a2.txt");

    let out = run(&["validate", a2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all axioms satisfied"));

    let out = run(&["info", a2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("degree:     5"));
    assert!(text.contains("milnor:     2"));
    assert!(text.contains("type:       true"));

    let out = run(&["values", a2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains('6'), "cusp value 6 missing: {text}");

    let out = run(&["values", a2.to_str().unwrap(), "--ordering", "v1,v2,v3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["values", a2.to_str().unwrap(), "--ordering", "v2,v1,v3"]);
    assert_eq!(out.status.code(), Some(2), "inadmissible ordering accepted");
}

#[test]
fn unload_outputs_canonical_result() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(&dir, "in.txt", "v r - m=1\nv a r m=2\n");
    let out = run(&["unload", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("tame: true"));
    assert!(text.contains("excess -1"));
    assert!(text.contains("v v1 - m=2\nv v2 v1 m=1\n"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_file(&dir, "bad.txt", "v r -\nv a b\n");
    let out = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["info", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Unweighted input to a weighted operation is an input error.
    let g = write_file(&dir, "unweighted.txt", "v r -\n");
    let out = run(&["info", g.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_reports_axiom_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    // Expressible violation: satellite target not on the legal chain. The
    // lenient path reports it as an axiom-4 violation.
    let f = write_file(&dir, "ax4.txt", "v r -\nv a r\nv x r\nv c a +x\n");
    let out = run(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("axiom 4"));
}

#[test]
fn adjacency_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = make_type(&dir, "D:4", "d4.txt");
    let a2 = make_type(&dir, "A:2", "a2.txt");
    let a3 = make_type(&dir, "A:3", "a3.txt");

    let out = run(&["linear-adj", d4.to_str().unwrap(), a3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("LINEAR"));

    let out = run(&["linear-adj", a2.to_str().unwrap(), a3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("NOT_LINEAR"));

    let out = run(&["adj", a2.to_str().unwrap(), a3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("two-free-vertices"));

    let out = run(&["dominates", a3.to_str().unwrap(), a2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["dominates", a2.to_str().unwrap(), a3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let a5 = make_type(&dir, "A:5", "a5.txt");
    let a4 = make_type(&dir, "A:4", "a4.txt");
    let out = run(&[
        "dominates",
        a5.to_str().unwrap(),
        a4.to_str().unwrap(),
        "--node-cap",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = make_type(&dir, "D:4", "d4.txt");
    let a3 = make_type(&dir, "A:3", "a3.txt");
    let cert = dir.path().join("cert.json");

    let out = run(&[
        "linear-adj",
        d4.to_str().unwrap(),
        a3.to_str().unwrap(),
        "--json",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certificate verifies"));

    // Tamper with a stored value and watch the verifier catch it.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    doc["values_transported"][0][1] = serde_json::json!(999);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("REJECTED"));

    // Garbage JSON is an input error.
    let junk = write_file(&dir, "junk.json", "{not json");
    let out = run(&["verify", junk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn adj_json_certificate_for_full_cascade() {
    let dir = tempfile::tempdir().unwrap();
    let a4 = make_type(&dir, "A:4", "a4.txt");
    let a3 = make_type(&dir, "A:3", "a3.txt");
    let cert = dir.path().join("adj.json");
    let out = run(&[
        "adj",
        a4.to_str().unwrap(),
        a3.to_str().unwrap(),
        "--json",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("LINEAR"));
    let out = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn enumerate_and_render() {
    let out = run(&["enumerate", "--vertices", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("v v1 -").count(), 3);

    let out = run(&["enumerate", "--max-degree", "6", "--types"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("v v1 -").count(), 4);

    let out = run(&["enumerate", "--vertices", "99"]);
    assert_eq!(out.status.code(), Some(3), "cap must exhaust");

    let dir = tempfile::tempdir().unwrap();
    let a2 = make_type(&dir, "A:2", "a2.txt");
    let out = run(&["render", a2.to_str().unwrap(), "--format", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("<svg"));
    let out = run(&["render", a2.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("digraph"));
}

#[test]
fn make_rejects_bad_specs() {
    let out = run(&["make", "A:0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["make", "Z:9"]);
    assert_eq!(out.status.code(), Some(2));
}
