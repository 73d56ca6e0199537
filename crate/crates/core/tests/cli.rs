use std::path::PathBuf;
use std::process::Command;

use nielsen_core::cli;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn golden(case: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{case}.json"));
    std::fs::read_to_string(path).unwrap().trim().to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = cli::run(std::iter::once("nielsen").chain(args.iter().copied()));
    let json = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", out.stdout));
    (out.code, json)
}

#[test]
fn reproduce_matches_goldens() {
    for case in nielsen_core::scenarios::CASE_IDS {
        let out = cli::run(["nielsen", "reproduce", case]);
        assert_eq!(out.code, 0, "{case}");
        assert_eq!(out.stdout, golden(case), "{case}");
    }
}

#[test]
fn binary_agrees_with_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_nielsen")).args(["reproduce", "nonreal-twist"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), golden("nonreal-twist"));
}

#[test]
fn check_exit_codes() {
    let (code, v) = run(&["check", "--setup", &data("k3n3.setup.json"), "--group", &data("delta.group.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["realizable"], false);
    assert_eq!(v["witness"]["divisibility"], 4);

    let (code, v) = run(&["check", "--setup", &data("k3n3.setup.json"), "--group", &data("e8neg.group.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["kind"], "Realized");
    assert_eq!(v["details"]["lg_rank"], 8);

    let (code, v) = run(&["check", "--setup", &data("kum3.setup.json"), "--group", &data("trivial3.group.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["conditional"], true);
}

#[test]
fn check_agrees_with_reproduce() {
    let (_, checked) = run(&["check", "--setup", &data("k3n3.setup.json"), "--group", &data("delta.group.json")]);
    let (_, reproduced) = run(&["reproduce", "nonreal-delta"]);
    let mut outcome = reproduced["outcome"].clone();
    outcome.as_object_mut().unwrap().remove("kind");
    assert_eq!(checked, outcome);
}

#[test]
fn shell_and_lattice() {
    let (code, v) = run(&["shell", "--file", &data("a2.lattice.json"), "--target", "-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 6);
    let (_, v) = run(&["shell", "--name", "E8", "--target", "-4", "--count-only", "--jobs", "4"]);
    assert_eq!(v["count"], 2160);
    assert!(v.get("vectors").is_none());
    let (code, v) = run(&["lattice", "--name", "k3n-x:5"]);
    assert_eq!(code, 0);
    assert_eq!(v["signature"]["positive"], 3);
    assert_eq!(v["discriminant"]["invariant_factors"], serde_json::json!([8]));
    let (_, v) = run(&["lattice", "--name", "kumn-y:3:2"]);
    assert_eq!(v["rank"], 3);
}

#[test]
fn errors_are_json() {
    let (code, v) = run(&["shell", "--name", "E8", "--target", "2"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("BadTarget")));
    let (code, v) = run(&["shell", "--name", "E8", "--target", "-40", "--node-cap", "10"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("NodeCapExceeded")));
    let (code, v) = run(&["check", "--setup", "/nonexistent", "--group", "x"]);
    assert_eq!((code, v["exit_code"].as_i64()), (2, Some(2)));
    let (code, _) = run(&["reproduce", "no-such-case"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, v) = run(&["lattice", "--name", "k3n-x:4"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("EvenN")));
}

#[test]
fn reproduce_parameters() {
    let (code, v) = run(&["reproduce", "central-extension", "--k", "3", "--d", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["text"], "split");
    let (code, v) = run(&["reproduce", "nonreal-delta", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"]["witness"]["square"], -8);
    let (code, _) = run(&["reproduce", "kum-translation", "--n", "3", "--d", "3"]);
    assert_eq!(code, 2);
}
