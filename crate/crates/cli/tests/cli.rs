use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn finito(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_finito"))
        .args(args)
        .env("NO_COLOR", "1")
        .env_remove("FINITO_MAX_POINTS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const COUNTEREXAMPLE: &str = "c < a1\nd < a1\nc < b\nd < b\ne < b\nd < a2\ne < a2\n";
const SUSPENDED_D3: &str = "c < a\nd < a\ne < a\nc < b\nd < b\ne < b\n";

#[test]
fn sphere_into_info_pipeline() {
    let sphere = finito(&["sphere", "1"], None);
    assert!(sphere.status.success());
    let info = finito(&["info"], Some(&stdout(&sphere)));
    assert!(info.status.success());
    let text = stdout(&info);
    assert!(text.contains("points: 4\n"));
    assert!(text.contains("height: 2\n"));
    assert!(text.contains("euler characteristic: 0\n"));
    let dash = finito(&["info", "-"], Some(&stdout(&sphere)));
    assert_eq!(stdout(&dash), text);
}

#[test]
fn dot_output_matches_golden_file() {
    let out = finito(&["sphere", "1", "--format", "dot"], None);
    assert_eq!(stdout(&out), include_str!("golden/sphere1.dot"));
}

#[test]
fn counterexample_info() {
    let out = finito(&["--json", "info"], Some(COUNTEREXAMPLE));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["euler_characteristic"], -1);
    assert_eq!(v["b1"], 2);
    assert_eq!(v["beat_points"].as_array().unwrap().len(), 0);
    assert_eq!(v["shrinking_reductions"], 0);
}

#[test]
fn mccord_on_the_counterexample_map() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.poset");
    let y = dir.path().join("y.poset");
    let f = dir.path().join("f.map");
    std::fs::write(&x, COUNTEREXAMPLE).unwrap();
    std::fs::write(&y, SUSPENDED_D3).unwrap();
    std::fs::write(&f, "a1 -> a\na2 -> a\nb -> b\nc -> c\nd -> d\ne -> e\n").unwrap();
    let args = [
        x.to_str().unwrap(),
        y.to_str().unwrap(),
        f.to_str().unwrap(),
    ];
    let out = finito(&["mccord", args[0], args[1], args[2]], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("result: confirmed"));
    // Continuous, but the preimage of U_a is a four-point circle.
    std::fs::write(&f, "a1 -> b\na2 -> a\nb -> a\nc -> c\nd -> d\ne -> e\n").unwrap();
    let out = finito(&["mccord", args[0], args[1], args[2]], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("  a  no\n"));
    std::fs::write(&f, "a1 -> c\na2 -> a\nb -> b\nc -> c\nd -> d\ne -> e\n").unwrap();
    let out = finito(&["mccord", args[0], args[1], args[2]], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("continuous: no"));
}

#[test]
fn input_errors_exit_with_two() {
    let cyclic = finito(&["info"], Some("a < b\nb < a\n"));
    assert_eq!(cyclic.status.code(), Some(2));
    assert!(stderr(&cyclic).contains("cycle"));
    let missing = finito(&["info", "/nonexistent/space.poset"], None);
    assert_eq!(missing.status.code(), Some(2));
    let malformed = finito(&["homology"], Some("a <\n"));
    assert_eq!(malformed.status.code(), Some(2));
    assert!(stderr(&malformed).contains("line 1"));
    let usage = finito(&["enumerate"], None);
    assert_eq!(usage.status.code(), Some(2));
    let filter = finito(&["enumerate", "3", "--filter", "shiny"], None);
    assert_eq!(filter.status.code(), Some(2));
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let over = finito(&["enumerate", "9"], None);
    assert_eq!(over.status.code(), Some(2));
    assert!(stderr(&over).contains("cap"));
    let out = Command::new(env!("CARGO_BIN_EXE_finito"))
        .args(["enumerate", "5"])
        .env("FINITO_MAX_POINTS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn duplicate_covers_warn_but_succeed() {
    let out = finito(&["info"], Some("a < b\na < b\n"));
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning: line 2"));
}

#[test]
fn enumerate_counts_and_filters() {
    let out = finito(&["--json", "enumerate", "4", "--filter", "connected"], None);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classes"], 16);
    assert_eq!(v["matching"], 10);
    let out = finito(
        &["enumerate", "4", "--filter", "minimal", "--emit", "poset"],
        None,
    );
    let text = stdout(&out);
    assert!(text.starts_with("# class 1 of 2\n"));
    // Every emitted class parses back.
    let parsed = finito(
        &["info"],
        Some(text.split("# class 2 of 2\n").nth(1).unwrap()),
    );
    assert!(parsed.status.success());
}

#[test]
fn verification_commands() {
    let out = finito(&["verify", "wedges", "--max-n", "3"], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["3", "6", "8", "3", "no", "ok"]));
    let out = finito(&["verify", "spheres", "--max-h", "3"], None);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: confirmed"));
}

#[test]
fn pi1_of_the_wedge_model() {
    let out = finito(&["pi1", "--base", "b"], Some(COUNTEREXAMPLE));
    let text = stdout(&out);
    assert!(out.status.success());
    assert!(text.contains("basepoint: b\n"));
    assert!(text.contains("free group of rank 2"));
    let out = finito(&["pi1", "--base", "q"], Some(COUNTEREXAMPLE));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn core_of_a_contractible_space() {
    let out = finito(&["--json", "core"], Some("d < b\nb < a\nc < a\n"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["contractible"], true);
    assert_eq!(v["removed"].as_array().unwrap().len(), 3);
}

#[test]
fn faces_export() {
    let out = finito(&["convert", "--format", "faces"], Some("x < y\n"));
    assert_eq!(stdout(&out), "x\ny\nx y\n");
}
