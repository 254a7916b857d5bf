use std::path::Path;
use std::process::{Command, Output};

use serde_json::json;

fn bqsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqsynth")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const NET: &str = r#"{"type":"series","children":[
    {"type":"element","kind":"R","value":"2"},
    {"type":"parallel","children":[
        {"type":"element","kind":"L","value":"1/3"},
        {"type":"element","kind":"C","value":"5"}]}]}"#;

#[test]
fn classify_exit_codes() {
    let four = bqsynth(&["classify", "--k", "1", "--z", "1", "--p", "3"]);
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(parse(&four)["class"], "FourElement");
    assert_eq!(bqsynth(&["classify", "--k", "1", "--z", "1", "--p", "1"]).status.code(), Some(2));
    let not_pr = bqsynth(&["classify", "--k", "1", "--z", "1", "--p", "6"]);
    assert_eq!(not_pr.status.code(), Some(1));
    assert_eq!(parse(&not_pr)["class"], "NotPositiveReal");
    assert_eq!(bqsynth(&["classify", "--k", "1", "--z", "1", "--p", "29/5"]).status.code(), Some(1));
    assert_eq!(bqsynth(&["classify", "--k", "x", "--z", "1", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn enumerate_four_gives_ten() {
    assert_eq!(parse(&bqsynth(&["enumerate", "--n", "4"]))["count"], 10);
    assert_eq!(parse(&bqsynth(&["enumerate", "--n", "2", "--labeled"]))["count"], 12);
    assert_eq!(bqsynth(&["enumerate", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn synth_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    for (z, p) in [("1", "5"), ("5", "1")] {
        let out = bqsynth(&["synth", "--k", "2", "--z", z, "--p", p]);
        assert_eq!(out.status.code(), Some(0));
        let file = write(dir.path(), "net.json", &stdout(&out));
        let target = format!(r#"{{"k":"2","z":"{z}","p":"{p}"}}"#);
        let v = bqsynth(&["verify", &file, "--target", &target]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        let wrong = r#"{"k":"2","z":"1","p":"4"}"#;
        assert_eq!(bqsynth(&["verify", &file, "--target", wrong]).status.code(), Some(1));
    }
}

#[test]
fn synth_rejects_unmet_conditions() {
    let out = bqsynth(&["synth", "--k", "1", "--z", "1", "--p", "5", "--config", "n4a"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(bqsynth(&["synth", "--k", "1", "--z", "1", "--p", "2"]).status.code(), Some(1));
}

#[test]
fn dual_twice_reproduces_canonical_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "in.json", NET);
    let inv = write(dir.path(), "inv.json", &stdout(&bqsynth(&["transform", "--op", "inv", &input])));
    let canonical = stdout(&bqsynth(&["transform", "--op", "inv", &inv]));
    let once = write(dir.path(), "once.json", &stdout(&bqsynth(&["transform", "--op", "dual", &input])));
    let twice = stdout(&bqsynth(&["transform", "--op", "dual", &once]));
    assert_eq!(twice, canonical);
}

#[test]
fn impedance_is_exact() {
    // 2 + s/(5s^2 + 3) with a monic denominator.
    let z = parse(&bqsynth(&["impedance", NET]));
    assert_eq!(z["num"], json!(["6/5", "1/5", "2"]));
    assert_eq!(z["den"], json!(["3/5", "0", "1"]));
}

#[test]
fn roots_and_pr_check() {
    let out = parse(&bqsynth(&["roots", "--poly", r#"["1","-10","31","-40","16"]"#, "--lo", "0", "--hi", "10000/42361"]));
    assert_eq!(out["count"], 1);
    assert_eq!(bqsynth(&["pr-check", "--target", r#"{"k":1,"z":1,"p":3}"#]).status.code(), Some(0));
    assert_eq!(bqsynth(&["pr-check", "--target", r#"{"k":1,"z":1,"p":6}"#]).status.code(), Some(1));
    let general = r#"{"A":1,"B":2,"C":1,"D":1,"E":6,"F":9}"#;
    assert_eq!(bqsynth(&["pr-check", "--target", general]).status.code(), Some(0));
}

#[test]
fn spice_export() {
    let out = stdout(&bqsynth(&["synth", "--k", "1", "--z", "1", "--p", "5", "--format", "spice"]));
    assert!(out.trim_end().ends_with(".end"));
    assert_eq!(out.lines().filter(|l| l.starts_with(['R', 'L', 'C'])).count(), 7);
}

#[test]
fn falsify_small_target() {
    let out = bqsynth(&["falsify", "--target", r#"{"k":1,"z":1,"p":3}"#, "--nmax", "2", "--starts", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(parse(&out).as_array().unwrap().iter().all(|e| e["success"] == false));
    assert_eq!(bqsynth(&["falsify", "--target", r#"{"k":1,"z":1,"p":3}"#, "--nmax", "6"]).status.code(), Some(2));
}
