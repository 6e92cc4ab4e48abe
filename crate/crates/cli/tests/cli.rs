use belltool_core::quantum::{ghz3_state, mermin3_measurements, serialize_strategy};
use serde_json::Value;
use std::process::{Command, Output};

fn belltool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belltool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = belltool(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("strict JSON")
}

fn num(v: &Value, path: &[&str]) -> f64 {
    path.iter()
        .fold(v, |v, k| &v[*k])
        .as_f64()
        .unwrap_or_else(|| panic!("missing {path:?}"))
}

#[test]
fn chsh_values() {
    let r = report(&["value", "--game", "chsh-d", "--d", "2", "--analyses", "classical,ns,quantum-xor,bound"]);
    assert_eq!(r["schema_version"], "1.0.0");
    assert_eq!(r["tool"], "belltool");
    assert_eq!(r["seed"], 0);
    assert_eq!(num(&r, &["results", "classical", "value"]), 0.75);
    assert!((num(&r, &["results", "ns", "value"]) - 1.0).abs() < 1e-9);
    let q = (2.0 + 2f64.sqrt()) / 4.0;
    assert!((num(&r, &["results", "quantum_xor", "value"]) - q).abs() < 1e-6);
    assert!((num(&r, &["results", "norm_bound", "bound"]) - q).abs() < 1e-10);
    assert_eq!(r["results"]["flags"]["sandwich_ok"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["value", "--game", "chsh-d", "--d", "3", "--analyses", "classical,ns,bound", "--seed", "7"];
    let a = belltool(&args);
    let b = belltool(&args);
    assert_eq!(a.stdout, b.stdout);
    let xor = ["value", "--game", "xor-file", "", "--seed", "3", "--workers"];
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"signs": [[1, 1, -1], [1, -1, 1], [-1, 1, 1]]}"#).unwrap();
    let p = path.to_str().unwrap();
    let mut one = xor.to_vec();
    one[3] = p;
    one.push("1");
    let mut two = xor.to_vec();
    two[3] = p;
    two.push("2");
    let r1 = belltool(&one);
    let r2 = belltool(&two);
    assert_eq!(r1.status.code(), Some(0));
    // --workers is not echoed, so the reports match byte for byte.
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn numbers_carry_twelve_significant_digits() {
    let out = belltool(&["value", "--game", "chsh-d", "--d", "3", "--analyses", "bound"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.718233512793"));
    assert!(!text.contains("NaN") && !text.contains("inf"));
}

#[test]
fn exit_codes() {
    assert_eq!(belltool(&["value"]).status.code(), Some(2));
    assert_eq!(belltool(&["value", "--game", "chsh-d"]).status.code(), Some(2));
    assert_eq!(belltool(&["value", "--game", "bogus"]).status.code(), Some(2));
    assert_eq!(belltool(&["value", "--game", "chsh-d", "--d", "2", "--analyses", "x"]).status.code(), Some(2));
    assert_eq!(belltool(&["value", "--game", "chsh-d", "--d", "2", "--budget", "0"]).status.code(), Some(2));
    assert_eq!(belltool(&["value", "--game", "chsh-d", "--d", "6"]).status.code(), Some(3));
    assert_eq!(belltool(&["value", "--game", "file", "/nonexistent/game.json"]).status.code(), Some(3));
    let big = belltool(&["value", "--game", "chshn-d", "--n", "5", "--d", "9", "--analyses", "classical"]);
    assert_eq!(big.status.code(), Some(4));
    assert!(!big.stderr.is_empty());
    assert!(big.stdout.is_empty());
    assert_eq!(belltool(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_game_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"players": 2, "inputs": [2, 2], "group": {"cyclic": [2]}, "f": [0]}"#).unwrap();
    let out = belltool(&["value", "--game", "file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = belltool(&["value", "--game", "chsh-d", "--d", "2", "--analyses", "bound", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["command"], "value");
}

#[test]
fn partition_is_one_based() {
    let r = report(&["value", "--game", "chshn-d", "--n", "3", "--d", "3", "--analyses", "bound", "--partition", "2"]);
    assert_eq!(r["results"]["norm_bound"]["partition"], serde_json::json!([2]));
    let want = 1.0 / 3.0 + 2.0 / (3.0 * 3f64.sqrt());
    assert!((num(&r, &["results", "norm_bound", "bound"]) - want).abs() < 1e-9);
}

#[test]
fn graph_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(
        &path,
        r#"{"signs": [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]]}"#,
    )
    .unwrap();
    let r = report(&["graph", "--game", "xor-file", path.to_str().unwrap(), "--certify-shannon"]);
    let res = &r["results"];
    assert_eq!(res["vertices"], 32);
    assert_eq!(res["regular"], true);
    assert_eq!(res["triangle_free"], true);
    assert_eq!(res["spectrum"]["matches"], true);
    assert_eq!(res["shannon"]["certified"], true);
    assert_eq!(res["independence"]["size"], 12);

    let r = report(&["graph", "--game", "chsh-d", "--d", "2", "--certify-shannon"]);
    assert_eq!(r["results"]["shannon"]["certified"], false);
    assert_eq!(belltool(&["graph", "--game", "mermin3"]).status.code(), Some(3));
}

#[test]
fn diew_report() {
    let r = report(&["diew", "--game", "mermin3"]);
    let res = &r["results"];
    assert_eq!(res["witnessed"], true);
    assert!((num(res, &["quantum_value"]) - 1.0).abs() < 1e-9);
    assert!((num(res, &["biseparable_bound", "bound"]) - 0.896).abs() < 5e-4);
    assert!(res["visibility_threshold"].is_number());

    let r = report(&["diew", "--game", "mermin3", "--visibility", "0.5"]);
    assert_eq!(r["results"]["witnessed"], false);
    assert_eq!(belltool(&["diew", "--game", "chsh-d", "--d", "2"]).status.code(), Some(2));
    assert_eq!(belltool(&["diew", "--game", "mermin3", "--visibility", "2"]).status.code(), Some(3));
}

#[test]
fn diew_with_strategy_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let text = serialize_strategy(&ghz3_state(), &mermin3_measurements().unwrap()).unwrap();
    std::fs::write(&path, text).unwrap();
    let from_file = report(&["diew", "--game", "mermin3", "--strategy", path.to_str().unwrap()]);
    let built_in = report(&["diew", "--game", "mermin3"]);
    for key in ["quantum_value", "witnessed", "visibility_threshold", "biseparable_bound"] {
        assert_eq!(from_file["results"][key], built_in["results"][key], "{key}");
    }
}

#[test]
fn cc_simulation() {
    let r = report(&["value", "--game", "mermin3", "--analyses", "cc-sim", "--seed", "5"]);
    assert_eq!(r["results"]["cc_sim"]["success"], true);
    assert_eq!(r["results"]["cc_sim"]["dits_per_evaluation"], 2);
}
