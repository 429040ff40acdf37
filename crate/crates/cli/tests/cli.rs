use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobcode"))
        .args(args)
        .env_remove("FROBCODE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn ring_z4_lists_lee_weights() {
    let o = run(&["weights", "Z4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0 0\n1 1\n2 2\n3 1\n");
}

#[test]
fn ring_reports_s0_and_field_weights() {
    let o = run(&["ring", "prod(Z2,Z2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S0 = {(0,0), (1,1)}"), "{}", stdout(&o));
    let o = run(&["weights", "GF(2^2)"]);
    let lines: Vec<String> = stdout(&o).lines().skip(1).map(str::to_string).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.ends_with(" 4/3")));
}

#[test]
fn verify_passes_on_matrix_ring() {
    let o = run(&["verify", "M2(GF(2))", "--full"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn analyze_f3_identity() {
    let o = run(&["analyze", data("f3_identity.code").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = &v["code"]["profile"];
    assert_eq!(p["w1"], "3/2");
    assert_eq!(p["w2"], "3");
    assert_eq!(p["b1"], 4);
    assert_eq!(p["b2"], 4);
    assert_eq!(v["code"]["index"], "1/2");
}

#[test]
fn dual_f3_identity() {
    let o = run(&["dual", data("f3_identity.code").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = &v["dual"];
    assert_eq!((d["w1"].as_str(), d["w2"].as_str()), (Some("3"), Some("6")));
    let m = &d["measured_srg"];
    let got: Vec<i64> = ["n", "k", "lambda", "mu"].iter().map(|k| m[k].as_i64().unwrap()).collect();
    assert_eq!(got, [9, 4, 1, 2]);
}

#[test]
fn graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = run(&[
        "graph",
        data("f3_identity.code").to_str().unwrap(),
        "--cert",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("measured  (9, 4, 1, 2)"));
    let text = std::fs::read_to_string(dot).unwrap();
    assert_eq!(text.matches("label=").count(), 9);
    assert_eq!(text.matches(" -- ").count(), 18);
}

#[test]
fn search_f3_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = run(&["search", "GF(3)", "k=2", "n_max=4", "--json", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("srg measured (9, 4, 1, 2) predicted (9, 4, 1, 2)"));
    let o2 = run(&["--sequential", "search", "GF(3)", "k=2", "n_max=4", "--json", b.to_str().unwrap()]);
    assert_eq!(o2.status.code(), Some(0));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn json_to_stdout_round_trips() {
    let o = run(&["--json", "-", "ring", "Z4"]);
    let rep: frobcode::report::Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.command, "ring");
    assert!(rep.passed);
}

#[test]
fn exit_codes() {
    let parse = run(&["ring", "GF(4"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(stderr(&parse).contains("parse error"));

    let zero = run(&["analyze", data("z4_zero_col.code").to_str().unwrap()]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(stderr(&zero).contains("column 2 is zero"));

    let bad = run(&["analyze", data("bad_element.code").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("3:3"));

    let cap = run(&["--cap", "5", "analyze", data("f3_identity.code").to_str().unwrap()]);
    assert_eq!(cap.status.code(), Some(2));
    assert!(stderr(&cap).contains("exceeds cap"));

    let env_cap = Command::new(env!("CARGO_BIN_EXE_frobcode"))
        .args(["analyze", data("f3_identity.code").to_str().unwrap()])
        .env("FROBCODE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(env_cap.status.code(), Some(2));

    let order = run(&["--order-cap", "8", "ring", "Z16"]);
    assert_eq!(order.status.code(), Some(2));

    let character = run(&["ring", "Z4", "--character-scale", "2"]);
    assert_eq!(character.status.code(), Some(1));
    assert!(stderr(&character).contains("not generating"));

    let usage = run(&["search", "GF(3)", "k"]);
    assert_eq!(usage.status.code(), Some(2));

    let missing = run(&["frobnicate"]);
    assert_eq!(missing.status.code(), Some(2));

    let many_weights = run(&["graph", data("z4_many_weights.code").to_str().unwrap()]);
    assert_eq!(many_weights.status.code(), Some(2));
}

#[test]
fn injected_fault_fails_with_witness() {
    let o = run(&["verify", "Z4", "--inject-fault", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().position(|l| l.starts_with("FAIL coset sums")).expect("coset sums fail");
    assert!(out.lines().nth(line + 1).unwrap().contains("witness: Left ideal"));
}
