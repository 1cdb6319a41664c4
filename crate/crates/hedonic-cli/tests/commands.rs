use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hedonic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hedonic")).args(args).env_remove("HD_BUDGET_SECONDS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn scripted_run_reports_a_six_step_cycle() {
    let o = hedonic(&["run", "ahg7", "--start", "cycle", "--policy", "script:cycle6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cycle_len=6"), "{}", stdout(&o));
    let o = hedonic(&["--json-style", "run", "ahg7", "--start", "cycle", "--policy", "script:cycle6"]);
    let v = json(&o);
    assert_eq!(v["outcome"]["kind"], "cycle-detected");
    assert_eq!(v["outcome"]["cycle_len"], 6);
}

#[test]
fn grand_coalition_of_fhg15_is_not_nash_stable() {
    let o = hedonic(&["--json-style", "check", "fhg15", "--partition", "grand", "--kind", "nash"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["stable"], false);
    assert!(!v["moves"].as_array().unwrap().is_empty());
}

#[test]
fn verify_paper_dhg3_passes() {
    let o = hedonic(&["verify-paper", "--scenario", "dhg3-forced-cycle"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("dhg3-forced-cycle: PASS"));
    let o = hedonic(&["--json-style", "verify-paper", "--scenario", "ahg7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["results"][0]["pass"], true);
}

#[test]
fn generated_files_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ahg7.json");
    let o = hedonic(&["gen", "--paper", "ahg7", "--out", path(&file)]);
    assert_eq!(code(&o), 0);
    let o = hedonic(&["run", path(&file), "--start", "cycle", "--policy", "script:cycle6"]);
    assert!(stdout(&o).contains("cycle_len=6"));

    let cnf = dir.path().join("f.cnf");
    fs::write(&cnf, "p cnf 2 2\n1 -2 0\n2 0\n").unwrap();
    let gadget = dir.path().join("gadget.json");
    let o = hedonic(&["gen", "--reduce", "sat->dhg-exists", "--input", path(&cnf), "--out", path(&gadget)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = hedonic(&["--json-style", "search", path(&gadget), "--mode", "exists-path"]);
    assert_eq!(json(&o)["answer"], "path-found");

    let o = hedonic(&["gen", "--random", "fhg", "--n", "6", "--seed", "4", "--family", "dag"]);
    assert_eq!(code(&o), 0);
    let again = hedonic(&["gen", "--random", "fhg", "--n", "6", "--seed", "4", "--family", "dag"]);
    assert_eq!(o.stdout, again.stdout, "generation is deterministic");
}

#[test]
fn traces_written_by_run_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.json");
    let o = hedonic(&["run", "ahg7", "--policy", "random:3", "--monitors", "gamma", "--out", path(&trace)]);
    assert_eq!(code(&o), 0);
    let o = hedonic(&["check", "ahg7", "--trace", path(&trace)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("trace valid"));

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    doc["steps"][0]["partition"] = serde_json::json!([[0, 1, 2, 3, 4, 5, 6]]);
    fs::write(&trace, doc.to_string()).unwrap();
    let o = hedonic(&["check", "ahg7", "--trace", path(&trace)]);
    assert_eq!(code(&o), 1, "a broken trace is a failed check");
}

#[test]
fn searches_answer() {
    let o = hedonic(&["--json-style", "search", "ahg15", "--mode", "exists-is", "--strategy", "type-reduced"]);
    assert_eq!(json(&o)["answer"], "none");
    let o = hedonic(&["--json-style", "search", "dhg3", "--mode", "converges"]);
    assert_eq!(json(&o)["answer"], "cycle-reachable");
    let o = hedonic(&["search", "fhg-triangle", "--mode", "exists-path", "--strategy", "plain"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&hedonic(&[])), 2);
    assert_eq!(code(&hedonic(&["run", "ahg7", "--policy", "sideways"])), 2);
    assert_eq!(code(&hedonic(&["run", "no-such-id"])), 2);
    assert_eq!(code(&hedonic(&["verify-paper", "--scenario", "no-such-scenario"])), 2);
    assert_eq!(code(&hedonic(&["check", "ahg7", "--inline", "[[0,1]]"])), 2, "partition misses agents");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"format_version\": 1,\n  \"game\": {\"kind\": \"ahg\", \"n\": oops}\n}\n").unwrap();
    let o = hedonic(&["check", path(&bad)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column"), "{err}");

    let o = Command::new(env!("CARGO_BIN_EXE_hedonic"))
        .args(["search", "ahg7", "--mode", "exists-is"])
        .env("HD_BUDGET_SECONDS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2, "a zero budget from the environment is rejected");
}
