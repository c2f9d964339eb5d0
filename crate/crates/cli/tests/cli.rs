use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn latcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcurve")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = latcurve(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const GENUS7: &str = "(0,0),(1,-1),(3,-2),(4,-2),(4,2),(3,2),(1,1)";

#[test]
fn profile_of_genus_seven_polygon() {
    let v = json_of(&["profile", GENUS7]);
    assert_eq!(v["genus"], 7);
    assert_eq!(v["gonality"], 4);
    assert_eq!(v["lw"], 4);
    assert_eq!(v["pencils"], json!({"kind": "exactly", "n": 2, "directions": [[1, 0], [0, 1]]}));
    let scroll: Vec<&Value> = v["pencil_data"].as_array().unwrap().iter().map(|p| &p["scrollar"]).collect();
    assert_eq!(scroll, vec![&json!([1, 1, 2]), &json!([0, 2, 2])]);
    assert_eq!(v["clifford"], json!({"index": 2, "dimension": 1}));
}

#[test]
fn scrollar_of_six_sigma() {
    let v = json_of(&["scrollar", "(0,0),(6,0),(0,6)", "--direction", "1,0"]);
    assert_eq!(v, json!({"scrollar": [0, 1, 2, 3], "complete": false, "rank": 2}));
}

#[test]
fn equivalence_and_recognition() {
    assert_eq!(json_of(&["equiv", "(0,0),(2,0),(0,2)", "(0,0),(2,0),(2,2)"]), json!({"equivalent": true}));
    assert_eq!(json_of(&["equiv", "(0,0),(2,0),(0,2)", "(0,0),(2,0),(0,1)"]), json!({"equivalent": false}));
    assert_eq!(json_of(&["recognize", "(0,0),(3,0),(0,3)"]), json!({"family": "SIGMA_MULTIPLE", "d": 3}));
}

#[test]
fn width_and_size_queries() {
    let v = json_of(&["width", "(0,0),(6,0),(0,6)", "--direction", "1,0"]);
    assert_eq!(v["width"], 6);
    assert_eq!(v["invariants"], json!([3, 2, 1, 0, -1]));
    assert_eq!(json_of(&["lw", "(0,0),(2,0),(0,2)"])["lw"], 2);
    assert_eq!(json_of(&["size", "(0,0),(2,0),(0,2)"]), json!({"ls": 2}));
    assert_eq!(json_of(&["cab", "3", "5"])["gonality"], 3);
    assert_eq!(json_of(&["hirzebruch", "1", "2", "3"])["scrollar"], json!([1, 2]));
}

#[test]
fn exit_codes() {
    // malformed input and domain violations
    assert_eq!(latcurve(&["profile", "(0,0),(1,0)x"]).status.code(), Some(1));
    assert_eq!(latcurve(&["cab", "4", "6"]).status.code(), Some(1));
    assert_eq!(latcurve(&["no-such-command"]).status.code(), Some(1));
    // well-formed but unsupported
    assert_eq!(latcurve(&["scrollar", "(0,0),(1,0)", "--direction", "1,0"]).status.code(), Some(2));
    assert_eq!(latcurve(&["enumerate", "--genus", "25"]).status.code(), Some(2));
    assert_eq!(latcurve(&["verify-bounds", "--table", "neargonal", "--max-lw", "8"]).status.code(), Some(2));
    let err = latcurve(&["profile", "(0,0),(1,0)x"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
    assert!(err.stdout.is_empty());
}

#[test]
fn emitted_polygons_round_trip() {
    let out = latcurve(&["enumerate", "--genus", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 45);
    for line in lines {
        let rec: Value = serde_json::from_str(line).unwrap();
        let poly = serde_json::to_string(&rec["canonical"]).unwrap();
        let hull = json_of(&["hull", &poly]);
        assert_eq!(hull["vertices"], rec["canonical"]);
        assert_eq!(hull["interior"], 2);
        assert_eq!(json_of(&["equiv", &poly, &poly]), json!({"equivalent": true}));
    }
}

#[test]
fn counts_match_known_values() {
    for (g, n) in [(1, 16), (2, 45), (3, 120), (4, 211)] {
        assert_eq!(json_of(&["enumerate", "--genus", &g.to_string(), "--count"]), json!({"count": n}));
    }
}

#[test]
fn out_and_resume_agree_with_a_plain_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g5.ndjson");
    let p = path.to_str().unwrap();
    let v = json_of(&["enumerate", "--genus", "5", "--out", p]);
    assert_eq!(v["count"], 403);
    let full = fs::read_to_string(&path).unwrap();
    let plain = String::from_utf8(latcurve(&["enumerate", "--genus", "5"]).stdout).unwrap();
    assert_eq!(full, plain);

    // simulate an interrupted run: keep only part of the done log and leave a
    // torn record behind for a class that never finished
    let done_path = dir.path().join("g5.ndjson.done");
    let done = fs::read_to_string(&done_path).unwrap();
    let kept: Vec<&str> = done.lines().take(2).collect();
    fs::write(&done_path, format!("{}\n", kept.join("\n"))).unwrap();
    let partial_path = dir.path().join("g5.ndjson.partial");
    let mut partial = fs::read_to_string(&partial_path).unwrap();
    partial.push_str("[[0,0],[9,9]]\t{\"canonical\":[[0,0],[1");
    fs::write(&partial_path, partial).unwrap();
    fs::remove_file(&path).unwrap();

    let v = json_of(&["enumerate", "--genus", "5", "--resume", p]);
    assert_eq!(v["count"], 403);
    assert_eq!(fs::read_to_string(&path).unwrap(), full);
}

#[test]
fn bound_table_json() {
    let v = json_of(&["verify-bounds", "--table", "gonal", "--max-lw", "4"]);
    assert_eq!(v["pass"], true);
    let mins: Vec<&Value> = v["rows"].as_array().unwrap().iter().map(|r| &r["min_volume2"]).collect();
    assert_eq!(mins, vec![&json!(18), &json!(20)]);
    let out = latcurve(&["verify-bounds", "--table", "gonal", "--max-lw", "4", "--pretty"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("overall PASS"));
}
