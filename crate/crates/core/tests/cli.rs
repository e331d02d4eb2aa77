use std::process::Command;

use coxinv::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("coxinv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn cc2_tables() {
    let (code, out, _) = call(&["cc2", "--name", "~G2"]);
    assert_eq!(code, 0);
    assert!(out.contains("2+2=4"), "{out}");

    let v = json(&["cc2", "--name", "~E7", "--format", "json"]);
    assert_eq!(v["total"], 19);
    assert_eq!(v["per_rank"], serde_json::json!([1, 1, 3, 4, 3, 3, 4, 0]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 19);
}

#[test]
fn json_is_deterministic() {
    let args = ["cc2", "--name", "~D6", "--format", "json"];
    let (_, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = call(&["verify", "--name", "F4"]);
    assert_eq!(code, 0);
    assert!(out.contains("match"), "{out}");

    let (code, out, err) = call(&["verify", "--name", "~A2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("not spherical"), "{err}");

    let (code, _, err) = call(&["verify", "--name", "E7", "--cap", "1000"]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn validation_errors() {
    for args in [
        &["cc2", "--name", "Q9"][..],
        &["cc2"],
        &["cc2", "--name", "A3", "--format", "dot"],
        &["graphs", "--name", "A3"],
        &["formulas", "triangle", "2", "3", "5"],
        &["cc2", "--file", "/nonexistent/diagram.json"],
    ] {
        let (code, out, err) = call(args);
        assert_ne!(code, 0, "{args:?}");
        assert!(out.is_empty(), "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(call(&["cc2", "--name", "Q9"]).0, 2);
    assert_eq!(call(&["cc2", "--file", "/nonexistent/diagram.json"]).0, 1);
}

#[test]
fn graphs_as_dot_and_json() {
    let (code, out, _) = call(&["graphs", "--name", "A4", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph Gamma2 {"));
    assert_eq!(out.matches(" -- ").count(), 2);

    let v = json(&[
        "graphs", "--name", "A4", "--k", "2", "--omega", "--format", "json",
    ]);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn formulas_and_racg() {
    let (_, out, _) = call(&["formulas", "affine-c", "2"]);
    assert_eq!(out.trim(), "6");
    let (_, out, _) = call(&["formulas", "triangle", "inf", "inf", "inf"]);
    assert_eq!(out.trim(), "3");
    let (_, out, _) = call(&["formulas", "direct", "--g", "2:1", "--h", "2:1", "--m", "2"]);
    assert_eq!(out.trim(), "3");

    let dir = std::env::temp_dir().join(format!("coxinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.txt");
    std::fs::write(&path, "rank 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let (code, out, _) = call(&["racg", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "8");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("coxinv-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.dot");
    let (code, out, _) = call(&[
        "graphs",
        "--name",
        "~G2",
        "--k",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"W_{1}\" -- \"W_{2}\""), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_separates_streams() {
    let bin = env!("CARGO_BIN_EXE_coxinv");
    let ok = Command::new(bin)
        .args(["cc2", "--name", "A4"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(ok.stderr.is_empty());

    let bad = Command::new(bin)
        .args(["verify", "--name", "A2"])
        .env("COXINV_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(4));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
}
