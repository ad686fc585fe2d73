use std::process::{Command, Output};

fn divcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divcode")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn expand_prints_digits() {
    let out = divcode(&["expand", "--q", "2", "--r", "2", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["digits"], serde_json::json!([1, 1, -1]));
    assert_eq!(v["feasible"], false);
}

#[test]
fn feasibility_exit_codes() {
    assert_eq!(divcode(&["feasible", "--q", "2", "--delta", "8", "--n", "33"]).status.code(), Some(1));
    assert_eq!(divcode(&["feasible", "--q", "2", "--delta", "8", "--n", "34"]).status.code(), Some(0));
    assert_eq!(divcode(&["feasible", "--q", "3", "--r", "1", "--n", "4"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(divcode(&["feasible", "--q", "5", "--delta", "5", "--n", "5"]).status.code(), Some(2));
    assert_eq!(divcode(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(divcode(&["census", "--q", "2"]).status.code(), Some(2));
}

#[test]
fn census_csv_and_determinism() {
    let args = ["census", "--q", "2", "--delta", "4", "--n", "16", "--format", "csv"];
    let a = divcode(&args);
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("n,k,count\n"));
    assert!(text.contains("16,5,21\n"));
    assert_eq!(a.stdout, divcode(&args).stdout);
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = divcode(&["census", "--q", "2", "--delta", "8", "--n", "40", "--budget-nodes", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["partial"], true);
}

#[test]
fn gamma_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let res = divcode(&["gamma", "--q", "2", "--delta", "8", "--n", "22", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["gamma"], "8");
    let witness = format!("{}.witness.txt", out.display());
    let check = divcode(&["check", &witness, "--delta", "8", "--n", "22", "--max-gamma", "8"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["divisible"], true);
    // a tighter multiplicity bound must be rejected
    let check = divcode(&["check", &witness, "--delta", "8", "--n", "22", "--max-gamma", "4"]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn gamma_infinite_exits_1() {
    let out = divcode(&["gamma", "--q", "2", "--delta", "4", "--n", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["gamma"], "inf");
}

#[test]
fn claims_listed_and_verified() {
    let list = String::from_utf8(divcode(&["verify-claim", "--list"]).stdout).unwrap();
    assert!(list.lines().any(|l| l.starts_with("2div-n2")));
    assert_eq!(divcode(&["verify-claim", "2div-n3"]).status.code(), Some(0));
}

#[test]
fn ternary_table() {
    let out = divcode(&["tables", "--suite", "ternary"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("7,3,1\n"));
}
