use std::io::Write;
use std::process::{Command, Output, Stdio};

use ntk_core::report::AnalysisReport;
use serde_json::Value;

fn ntk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ntk_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ntk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn group_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".grp").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn analyze_s3_json() {
    let out = ntk(&[
        "analyze",
        "--group",
        "symmetric:3",
        "--k",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["is_ntk"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["verdict"]["holds"] == true));
    assert_eq!(v["is_csnk"]["holds"], false);
    assert_eq!(v["sentences"]["mal"]["witness"]["kind"], "MalFail");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn analyze_trivial_group_from_stdin() {
    let out = ntk_stdin(
        &["analyze", "--group", "-", "--k", "1", "--format", "json"],
        "order 1\n0\n",
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["group"]["order"], 1);
    assert_eq!(v["is_csnk"]["holds"], true);
    for s in ["subgp", "nil", "mal"] {
        assert_eq!(v["sentences"][s]["holds"], true);
        assert!(v["sentences"][s]["witness"].is_null());
    }
    assert!(v["dichotomy"].is_null());
}

#[test]
fn analyze_group_files() {
    let c2 = group_file("order 2\n0 1\n1 0\n");
    let out = ntk(&[
        "analyze",
        "--group",
        c2.path().to_str().unwrap(),
        "--k",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["group"]["order"], 2);

    let s3 = group_file("degree 3\n(1 2)\n(1 2 3)\n");
    let out = ntk(&[
        "analyze",
        "--group",
        s3.path().to_str().unwrap(),
        "--k",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(json(&out)["group"]["order"], 6);
}

#[test]
fn ragged_file_is_a_parse_error() {
    let bad = group_file("order 3\n0 1 2\n1 2\n2 0 1\n");
    let out = ntk(&["analyze", "--group", bad.path().to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at 3:"));
}

#[test]
fn analysis_is_deterministic_and_round_trips() {
    let args = ["analyze", "--group", "dihedral:5", "--k", "1", "--format", "json"];
    let a = ntk(&args);
    let b = ntk(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let report = AnalysisReport::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text);
}

#[test]
fn method_flag_restricts() {
    let out = ntk(&[
        "analyze",
        "--group",
        "q8",
        "--k",
        "1",
        "--method",
        "pairwise_intersections",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["is_ntk"].as_array().unwrap().len(), 1);
    assert_eq!(v["is_ntk"][0]["verdict"]["holds"], false);
}

#[test]
fn harness_small_run() {
    let out = ntk(&["harness", "--max-order", "12", "--k", "1,2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["reports"].as_array().unwrap().len(), 16);
    assert!(v["reports"][0].get("elapsed_ms").is_none());
}

#[test]
fn harness_budget_exit_code() {
    let out = ntk(&["harness", "--max-order", "8", "--k", "1", "--subgroup-cap", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn harness_single_proposition() {
    let out = ntk(&[
        "harness",
        "--max-order",
        "10",
        "--k",
        "1",
        "--prop",
        "dichotomy",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
    assert_eq!(v["reports"][0]["id"], "dichotomy");
}

#[test]
fn magnus_eval() {
    let out = ntk(&[
        "magnus",
        "eval",
        "--m",
        "2",
        "--k",
        "2",
        "--format",
        "json",
        "(x1 x2)^2 (x1^2 x2^2 [x2,x1])^-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["identity"], true);
    let out = ntk(&[
        "magnus", "eval", "--m", "2", "--k", "2", "--format", "json", "[x1,x2]",
    ]);
    assert_eq!(json(&out)["series"], "1 + X1 X2 - X2 X1");
}

#[test]
fn magnus_usage_errors() {
    assert_eq!(
        ntk(&["magnus", "eval", "--m", "7", "--k", "2", "x1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ntk(&["magnus", "eval", "--m", "2", "--k", "2", "x1 ^"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ntk(&["magnus", "eval", "--m", "2", "--k", "2", "x3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ntk(&["magnus", "eval", "--m", "2", "--k", "2", "x1^65"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn freeprod_commands() {
    let out = ntk(&["freeprod", "malnormal", "--z", "0:x1 | 1:x1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);

    let out = ntk(&[
        "freeprod",
        "malnormal",
        "--factor",
        "cyclic:2",
        "--z",
        "0:#1 | 1:#1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["witness"]["x"], "0:#1");
    assert_eq!(v["witness"]["m"], -1);

    let out = ntk(&["freeprod", "example2", "--a", "cyclic:4", "--b", "cyclic:2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ntk(&["freeprod", "example2", "--a", "cyclic:3", "--b", "cyclic:2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ntk(&["freeprod", "embed", "--copies", "2", "--format", "json", "1:x2"]);
    assert_eq!(json(&out)["image"], "0:x1^-1 | 1:x2 | 0:x1");
}

#[test]
fn freeprod_rejects_conjugated_z_and_budget() {
    let out = ntk(&["freeprod", "malnormal", "--z", "0:x2 | 1:x1 | 0:x2^-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ntk(&["freeprod", "malnormal", "--z", "0:x1 | 1:x1", "--node-cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_required_flag_is_usage_error() {
    assert_eq!(ntk(&["analyze", "--group", "cyclic:3"]).status.code(), Some(2));
    assert_eq!(
        ntk(&["harness", "--max-order", "8", "--k", "1", "--prop", "nope"])
            .status
            .code(),
        Some(2)
    );
}
