use std::process::Command;

use serde_json::{json, Value};

use mucube_cli::run_from;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_from(
        std::iter::once("mucube").chain(args.iter().copied()),
        &mut out,
    );
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mucube"))
}

#[test]
fn classify_transcripts() {
    let v = run_json(&["classify", "--p", "1", "--q", "0"]);
    assert_eq!(v["verdict"], "periodic");
    assert_eq!(v["methods"], "all agree");
    assert_eq!(v["classification"]["certificate"]["core_multiplier"], 4);

    let v = run_json(&["classify", "--p", "5", "--q", "2"]);
    assert_eq!(v["verdict"], "drift");
    assert_eq!(
        v["classification"]["certificate"]["drift_vector"],
        json!([4, 0, 0])
    );

    let v = run_json(&[
        "classify", "--p", "-3", "--q", "1", "--method", "x", "--verify",
    ]);
    assert_eq!(v["verdict"], "drift");
    assert_eq!(v["canonical"], json!([3, 1]));
    assert_eq!(v["verified"], true);
}

#[test]
fn non_primitive_input_warns_and_reduces() {
    let out = bin()
        .args(["classify", "--p", "2", "--q", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err, "warning: (2, 4) is not primitive; using (1, 2)\n");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classification"]["direction"], json!([1, 2]));
    assert_eq!(v["verdict"], "drift");
}

#[test]
fn exit_codes() {
    let status = |args: &[&str]| bin().args(args).output().unwrap();
    let o = status(&["classify", "--p", "0", "--q", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        String::from_utf8(o.stderr).unwrap(),
        "error: invalid input: direction (0, 0)\n"
    );
    assert_eq!(
        status(&["classify", "--p", "1", "--q", "0", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(status(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
    let o = status(&["witness", "--p", "5", "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        String::from_utf8(o.stderr).unwrap(),
        "error: no witness found within depth 29\n"
    );
    assert!(o.stdout.is_empty());
}

#[test]
fn witness_transcript() {
    let (code, out) = run(&["witness", "--p", "4", "--q", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v,
        json!({
            "depth": 2,
            "direction": [4, 1],
            "in_gamma": true,
            "matrix": {"a": 4, "b": -1, "c": 1, "d": 0},
            "rho": {"a": "1", "b": "1", "c": "0", "d": "1"},
            "word": "A T",
        })
    );
}

#[test]
fn fourey_transcripts() {
    let v = run_json(&["fourey", "--coeffs", "0,1"]);
    assert_eq!(v["slope"], "1/4");
    assert_eq!(v["verdict"], "periodic");
    assert_eq!(v["word"], "T^2 A T");
    assert_eq!(v["in_gamma"], true);
    assert_eq!(v["convergents"], json!(["0/1", "1/4"]));

    let v = run_json(&["fourey", "--coeffs", "0", "--period", "2,3"]);
    assert_eq!(v["recurrence"], "RecurrentAll");
    assert_eq!(v["convergents"][3], "97/784");
}

#[test]
fn twist_transcript() {
    let v = run_json(&["twist", "--slope", "0", "--axis", "vertical", "--k", "2"]);
    assert_eq!(v["twisted_slope"], "8/1");
    assert_eq!(v["verdict"], "periodic");
    assert_eq!(v["predicted_length"], "4*sqrt(65)");
    assert_eq!(v["predicted_length"], v["core_length"]);
}

#[test]
fn cylinders_and_trace() {
    let v = run_json(&["cylinders", "--p", "4", "--q", "1"]);
    assert_eq!(v["surface"], "Y");
    assert_eq!(v["cylinders"].as_array().unwrap().len(), 1);
    assert_eq!(v["cylinders"][0]["area"], "4/1");

    let v = run_json(&["cylinders", "--p", "5", "--q", "2", "--surface", "x"]);
    assert_eq!(v["cylinders"].as_array().unwrap().len(), 3);

    let v = run_json(&["trace", "--p", "1", "--q", "0"]);
    assert_eq!(v["closed"], true);
    assert_eq!(v["arc_length"]["multiplier_of_sqrt"], "4/1");
    let v = run_json(&["trace", "--p", "1", "--q", "0", "--time", "1"]);
    assert_eq!(v["outcome"], "bound_reached");
    assert_eq!(v["points"][0], json!(["0/1", "1/1", "1/2"]));
}

#[test]
fn small_scan() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let svg = dir.path().join("s.svg");
    let args = [
        "scan",
        "--max",
        "1",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ];
    let v = run_json(&args);
    assert_eq!(
        (v["periodic"].as_u64(), v["drift"].as_u64()),
        (Some(4), Some(4))
    );
    let first = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(
        first,
        "p,q,verdict,core_multiplier,drift_x,drift_y,drift_z\n\
         -1,-1,drift,0,-1,-1,1\n\
         -1,0,periodic,4,0,0,0\n\
         -1,1,drift,0,-1,1,-1\n\
         0,-1,periodic,4,0,0,0\n\
         0,1,periodic,4,0,0,0\n\
         1,-1,drift,0,1,-1,1\n\
         1,0,periodic,4,0,0,0\n\
         1,1,drift,0,1,1,-1\n"
    );
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.starts_with("<svg"));
    assert_eq!(picture.matches("<line").count(), 4);

    run_json(&args);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), first);

    let bad = dir.path().join("missing").join("s.csv");
    let (code, _) = run(&["scan", "--max", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn scan_honours_the_output_dir_variable() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["scan", "--max", "2"])
        .env("MUCUBE_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("scan_2.csv").exists());
    assert!(dir.path().join("scan_2.svg").exists());
}
