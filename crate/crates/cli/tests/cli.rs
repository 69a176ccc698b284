use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

fn broomdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_broomdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn broomdist_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_broomdist"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path_str(&path)
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_owned()
}

const REVERSAL6: &str = r#"{"q":6,"pp1":[1,2,3,4,5,6],"pp2":[6,5,4,3,2,1]}"#;

#[test]
fn reversal_on_six_leaves_has_distance_twelve() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rev6.json", REVERSAL6);
    let r = json_out(&broomdist(&["distance", &f, "--no-timings"]));
    assert_eq!(r["distance"], 12);
    assert_eq!(r["xstar"], serde_json::json!([1, 2, 3, 4, 5, 6]));
    assert!(r.get("timings").is_none());
    assert!(r.get("geodesic").is_none());
}

#[test]
fn single_transposition_of_the_clique() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "perm.json",
        r#"{"p":3,"q":0,"t1":{"handle":["p1","p2","p3"],"leaves":[]},
             "t2":{"handle":["p2","p1","p3"],"leaves":[]}}"#,
    );
    let r = json_out(&broomdist(&["distance", &f]));
    assert_eq!(r["distance"], 1);
    assert!(r["timings"]["solve_ms"].is_number());
}

#[test]
fn identical_brooms_are_at_distance_zero() {
    let out = broomdist_stdin(&["distance", "-", "--geodesic"], r#"{"q":4,"pp1":[3,1],"pp2":[3,1]}"#);
    let r = json_out(&out);
    assert_eq!(r["distance"], 0);
    assert_eq!(r["geodesic"]["length"], 0);
}

#[test]
fn reports_are_byte_identical_without_timings() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rev6.json", REVERSAL6);
    let args = ["distance", &f, "--no-timings", "--explain", "--dump-cut-graph", "--trace"];
    let a = broomdist(&args);
    let b = broomdist(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn explain_and_cut_graph_are_consistent() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rev6.json", REVERSAL6);
    let r = json_out(&broomdist(&["distance", &f, "--no-timings", "--explain", "--dump-cut-graph"]));
    assert_eq!(r["explain"]["value_at_xstar"], r["distance"]);
    assert_eq!(r["explain"]["y"].as_array().unwrap().len(), 6);
    let g = &r["cut_graph"];
    assert_eq!(g["doubled_weights"], true);
    // Two terminals and six Y nodes; all 15 pairs plus 12 terminal arcs.
    assert_eq!(g["nodes"].as_array().unwrap().len(), 8);
    assert_eq!(g["edges"].as_array().unwrap().len(), 27);
}

#[test]
fn geodesic_trace_walks_from_t1_to_t2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "rev6.json", REVERSAL6);
    let r = json_out(&broomdist(&["geodesic", &f, "--trace", "--no-timings"]));
    let trace = r["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 12);
    assert_eq!(r["geodesic"]["rotations"].as_array().unwrap().len(), 12);
    assert_eq!(trace.last().unwrap()["broom"], r["instance"]["t2"]);
    let phases: Vec<u64> = r["geodesic"]["phases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(phases.iter().sum::<u64>(), 12);
}

#[test]
fn empty_handle_broom_has_three_neighbors() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.json", r#"{"q":3,"pp1":[],"pp2":[1]}"#);
    let r = json_out(&broomdist(&["neighbors", &f, "--tree", "t1"]));
    assert_eq!(r["degree"], 3);
    let kinds: Vec<&str> = r["neighbors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["rotation"]["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["lift", "lift", "lift"]);
    let r2 = json_out(&broomdist(&["neighbors", &f, "--tree", "t2"]));
    assert_eq!(r2["degree"], 3);
    assert_eq!(r2["broom"]["handle"], serde_json::json!(["q1", "p1"]));
}

#[test]
fn validate_echoes_the_canonical_instance() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "trailing.json",
        r#"{"p":1,"q":3,"t1":{"handle":["q1","q2","p1","q3"],"leaves":[]},
             "t2":{"handle":["p1"],"leaves":["q3","q1","q2"]}}"#,
    );
    let r = json_out(&broomdist(&["validate", &f]));
    assert_eq!(r["valid"], true);
    assert_eq!(r["instance"]["t1"]["handle"], serde_json::json!(["q1", "q2", "p1"]));
    assert_eq!(r["instance"]["t1"]["leaves"], serde_json::json!(["q3"]));
    assert_eq!(r["instance"]["t2"]["leaves"], serde_json::json!(["q1", "q2", "q3"]));
    assert_eq!(r["tubings"]["t1"].as_array().unwrap().len(), 3);
    assert_eq!(r["tubings"]["t2"].as_array().unwrap().len(), 3);
}

#[test]
fn random_is_reproducible_from_its_seed() {
    let args = ["random", "--seed", "1", "--p", "2", "--q", "3"];
    let a = broomdist(&args);
    let b = broomdist(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = broomdist(&["random", "--seed", "2", "--p", "6", "--q", "6"]);
    assert_ne!(a.stdout, other.stdout);

    // Its output is itself a valid instance.
    let out = broomdist_stdin(&["validate", "-"], std::str::from_utf8(&a.stdout).unwrap());
    assert_eq!(json_out(&out)["valid"], true);
}

#[test]
fn oracle_agrees_on_small_instances() {
    for seed in 0..12u64 {
        let (p, q) = (1 + seed % 3, 3 - seed % 3 + seed % 2);
        let inst = broomdist(&["random", "--seed", &seed.to_string(), "--p", &p.to_string(), "--q", &q.to_string()]);
        let out = broomdist_stdin(&["oracle", "-"], std::str::from_utf8(&inst.stdout).unwrap());
        let r = json_out(&out);
        assert_eq!(r["verdict"], "mincut==bfs==brute");
        assert_eq!(r["holds"], true, "{r}");
        assert_eq!(r["mincut"], r["bfs"]);
    }
}

#[test]
fn oracle_all_pairs_on_the_claw() {
    let r = json_out(&broomdist(&["oracle", "--all-pairs", "--p", "1", "--q", "3"]));
    assert_eq!(r["brooms"], 16);
    assert_eq!(r["pairs"], 256);
    assert_eq!(r["mismatches"], 0);
    assert_eq!(r["holds"], true);
    assert_eq!(r["diameter"], 4);
}

#[test]
fn bench_reports_every_size() {
    let r = json_out(&broomdist(&["bench", "--sizes", "20,40", "--reps", "1", "--seed", "7"]));
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["n"], 40);
    assert!(r["loglog_slope"].is_number());
}

fn error_kind(out: &Output) -> String {
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    err["error"]["kind"].as_str().unwrap().to_owned()
}

#[test]
fn malformed_json_exits_with_two() {
    let out = broomdist_stdin(&["distance", "-"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "parse");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_brooms_exit_with_two() {
    let cases = [
        r#"{"p":1,"q":2,"t1":{"handle":["p1"],"leaves":["q1"]},"t2":{"handle":["p1"],"leaves":["q1","q2"]}}"#,
        r#"{"p":1,"q":1,"t1":{"handle":["q1"],"leaves":[]},"t2":{"handle":["p1"],"leaves":["q1"]}}"#,
        r#"{"q":3,"pp1":[4],"pp2":[]}"#,
        r#"{"p":0,"q":1,"t1":{"handle":[],"leaves":["q1"]},"t2":{"handle":[],"leaves":["q1"]}}"#,
        r#"{"p":1,"q":1,"t1":{"handle":["p1"],"leaves":["q1"]},"t2":{"handle":["p1"],"leaves":["q1"]},"x":1}"#,
    ];
    for text in cases {
        let out = broomdist_stdin(&["distance", "-"], text);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let kind = error_kind(&out);
        assert!(kind == "validation" || kind == "parse", "{text}: {kind}");
    }
}

#[test]
fn missing_file_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let out = broomdist(&["distance", &path_str(&dir.path().join("absent.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "io");
}

#[test]
fn exceeding_the_cap_exits_with_three() {
    let out = broomdist_stdin(&["oracle", "-", "--cap", "10"], r#"{"q":3,"pp1":[1,2,3],"pp2":[3,2,1]}"#);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "cap_exceeded");
    let out = broomdist(&["oracle", "--all-pairs", "--p", "3", "--q", "3", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
}
