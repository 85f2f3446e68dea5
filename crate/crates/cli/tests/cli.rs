use mahler_cli::run_cli;
use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let o = run_cli(std::iter::once("mahler").chain(args.iter().copied()));
    (o.code, o.stdout, o.stderr)
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn rows(v: &Value) -> Vec<Vec<i64>> {
    v["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect())
        .collect()
}

#[test]
fn shnf_example() {
    let v = json(&["shnf", "--matrix", "[[1,1,4,0],[0,2,3,3],[0,0,5,1]]"]);
    assert_eq!(
        rows(&v["result"]["h"]),
        vec![vec![1, 0, 0, -2], vec![0, 1, 4, 2], vec![0, 0, 5, 1]]
    );
    assert!(v["config"]["matrix"].is_object());
    let v = json(&["hnf", "--matrix", "[[2,4],[1,3]]"]);
    assert_eq!(rows(&v["result"]["h"]), vec![vec![1, 1], vec![0, 2]]);
}

#[test]
fn measure_of_cubic() {
    let v = json(&["measure", "--poly", "z1^3-z1-1", "-k", "1"]);
    let x = v["result"]["value"].as_f64().unwrap();
    assert!((x - 1.324717957244746f64.ln()).abs() < 1e-12);
    assert_eq!(v["config"]["nodes"], 2048);
    assert_eq!(v["result"]["method"], "roots");
}

#[test]
fn measure_with_matrix_and_methods() {
    let v = json(&["measure", "--poly", "1+z1+z2", "--matrix", "[[1,-1]]"]);
    assert_eq!(v["result"]["value"].as_f64(), Some(0.0));
    let target = 0.3230659472194505;
    for method in ["jensen", "qmc", "lawton"] {
        let v = json(&[
            "measure",
            "--poly",
            "1+z1+z2",
            "--method",
            method,
            "--schedule",
            "5,9,13,17,25,37,64",
        ]);
        let r = &v["result"];
        let (x, e) = (r["value"].as_f64().unwrap(), r["error_bound"].as_f64().unwrap());
        assert!((x - target).abs() <= e + 1e-6, "{method}: {x} +/- {e}");
        assert_eq!(v["method"], method);
    }
}

#[test]
fn exit_codes() {
    let (code, out, err) = run(&["measure", "--poly", "0"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("zero polynomial has no Mahler measure"));
    let (code, _, err) = run(&["measure", "--poly", "z1 - z2", "--matrix", "[[1,1]]"]);
    assert_eq!(code, 1);
    assert!(err.contains("F_A is zero"));
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["measure"]).0, 2);
    assert_eq!(run(&["measure", "--poly", "1 +* z1"]).0, 2);
    assert_eq!(run(&["measure", "--poly", "1+z1+z2", "--matrix", "[[1,2,3]]"]).0, 2);
    assert_eq!(run(&["measure", "--poly", "1+z1", "--schedule", "9,5"]).0, 2);
    assert_eq!(run(&["bounds", "--poly", "1+z1", "--format", "csv"]).0, 2);
    assert_eq!(run(&["spectrum", "--poly", "1+z1", "--height", "0"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("spectrum"));
}

#[test]
fn q_and_bounds() {
    let v = json(&["q", "--n", "7", "--len", "3"]);
    assert_eq!(v["result"]["q"], 7);
    let v = json(&["q", "--vector", "3,5"]);
    assert_eq!(v["result"]["q"], 5);
    let v = json(&["bounds", "--poly", "5+z1+z2"]);
    assert!((v["result"]["lower"].as_f64().unwrap() - 5f64.ln()).abs() < 1e-12);
    assert!((v["result"]["upper"].as_f64().unwrap() - 7f64.ln()).abs() < 1e-12);
}

#[test]
fn spectrum_and_lehmer() {
    let v = json(&["spectrum", "--poly", "z1 - z2", "--height", "2"]);
    assert_eq!(v["result"]["distinct_values"], serde_json::json!([0.0]));
    assert_eq!(v["config"]["tolerance"], 1e-7);
    let (code, csv, _) = run(&[
        "spectrum", "--poly", "1+z1+z2", "--height", "1", "--nodes", "256", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# config: "));
    assert_eq!(lines[1], "h,value,error_bound,method");
    assert_eq!(lines.len(), 2 + 6);
    assert!(lines[2].starts_with("\"[]\","));
    let v = json(&[
        "lehmer",
        "--linear-form",
        "2",
        "--height",
        "4",
        "--max-rank",
        "1",
        "--schedule",
        "5,9,13,17",
        "--nodes",
        "256",
    ]);
    let l = v["result"]["lehmer_element"].as_f64().unwrap();
    assert!((l - 1.324717957244746f64.ln()).abs() < 1e-10);
    assert_eq!(v["config"]["ranks"], serde_json::json!([0, 1]));
}

#[test]
fn converge_emits_trace_rows() {
    let (code, csv, _) = run(&[
        "converge",
        "--poly",
        "1+z1+z2",
        "--schedule",
        "5,9,13",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[1], "n,estimate");
    let ns: Vec<&str> = lines[2..].iter().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ns, vec!["5", "9", "13"]);
    let v = json(&["converge", "--poly", "1+z1+z2", "--schedule", "5,9,13"]);
    assert_eq!(v["result"]["detail"]["trace"].as_array().unwrap().len(), 3);
}

#[test]
fn embed_and_generators() {
    let v = json(&["embed", "--poly", "1+z1+z2"]);
    assert_eq!(v["result"]["n"], 2);
    assert_eq!(rows(&v["result"]["a"]), vec![vec![2, 0, 1, 0], vec![0, 1, 1, 0]]);
    let v = json(&["mbgen", "--bound", "2"]);
    assert_eq!(v["result"]["count"], 8);
    assert_eq!(v["result"]["generators"][5]["form"], "-z2 + z1");
    assert_eq!(v["result"]["generators"][5]["parts"], serde_json::json!([1, -1]));
}

#[test]
fn files_and_output_path() {
    let dir = std::env::temp_dir().join(format!("mahler-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let poly = dir.join("f.txt");
    let matrix = dir.join("a.json");
    let out = dir.join("out.json");
    std::fs::write(&poly, "1 + z1 + z2\n").unwrap();
    std::fs::write(&matrix, r#"{"rows": 1, "cols": 2, "data": [[1, 1]]}"#).unwrap();
    let (code, stdout, err) = run(&[
        "measure",
        "--poly-file",
        poly.to_str().unwrap(),
        "--matrix-file",
        matrix.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((v["result"]["value"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-14);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = [
        "measure",
        "--poly",
        "1+z1+z2+z3",
        "--method",
        "qmc",
        "--samples",
        "4096",
        "--seed",
        "3",
    ];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn binary_wraps_run_cli() {
    let out = Command::new(env!("CARGO_BIN_EXE_mahler"))
        .args(["measure", "--poly", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero polynomial"));
    let out = Command::new(env!("CARGO_BIN_EXE_mahler"))
        .args(["q", "--vector", "1,4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["q"], 4);
}
