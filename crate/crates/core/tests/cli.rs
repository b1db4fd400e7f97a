use std::process::{Command, Output};

fn periodlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periodlab"))
        .args(args)
        .env_remove("PERIODLAB_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn period_json_fields() {
    let out = periodlab(&["period", "--k", "7", "--a", "1", "--b", "0", "--c", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["formula_period"], "105");
    assert_eq!(v["oracle_period"], "105");
    assert_eq!(v["cLk"], "420");
    assert_eq!(v["agree"], true);
}

#[test]
fn eval_prints_exact_value() {
    let out = periodlab(&["eval", "--k", "3", "--a", "1", "--b", "0", "--c", "1", "--n", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "k,a,b,c,n,function,value\n3,1,0,1,3,phi,2\n");

    let out = periodlab(&["eval", "--k", "1", "--a", "1", "--b", "0", "--c", "2", "--n", "2", "--function", "pow:-1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "1/2");
}

#[test]
fn exit_codes() {
    let invalid = periodlab(&["period", "--k", "0", "--a", "1", "--b", "0", "--c", "1"]);
    assert_eq!(invalid.status.code(), Some(2));
    let bad_tag = periodlab(&["period", "--k", "2", "--a", "1", "--b", "0", "--c", "1", "--function", "mu"]);
    assert_eq!(bad_tag.status.code(), Some(2));
    let not_found = periodlab(&["witness-nonperiodic", "--min-bound", "5", "--search-limit", "1"]);
    assert_eq!(not_found.status.code(), Some(3));
    let over_budget = periodlab(&[
        "period", "--k", "7", "--a", "1", "--b", "0", "--c", "1", "--method", "oracle", "--oracle-budget", "10",
    ]);
    assert_eq!(over_budget.status.code(), Some(3));
}

#[test]
fn env_budget_is_overridden_by_flag() {
    let args = ["period", "--k", "7", "--a", "1", "--b", "0", "--c", "1", "--format", "csv"];
    let out = Command::new(env!("CARGO_BIN_EXE_periodlab"))
        .args(args)
        .env("PERIODLAB_ORACLE_BUDGET", "100")
        .output()
        .unwrap();
    assert!(stdout(&out).ends_with(",105,,\n"));
    let out = Command::new(env!("CARGO_BIN_EXE_periodlab"))
        .args(args)
        .args(["--oracle-budget", "500"])
        .env("PERIODLAB_ORACLE_BUDGET", "100")
        .output()
        .unwrap();
    assert!(stdout(&out).ends_with(",105,105,true\n"));
}

#[test]
fn sweep_output_is_deterministic() {
    let args = ["sweep", "--k", "1..4", "--a", "1..3", "--b", "0..2", "--c", "1..2", "--format", "csv"];
    let one = periodlab(&args);
    let two = periodlab(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(two.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(stdout(&one).lines().count(), 1 + 4 * 3 * 3 * 2);
}

#[test]
fn witness_and_bound() {
    let out = periodlab(&["witness-nonperiodic", "--min-bound", "2", "--search-limit", "100"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["p"].as_u64(), v["m"].as_u64(), v["n0"].as_u64()), (Some(3), Some(2), Some(18)));

    let out = periodlab(&["bound", "--k", "3", "--a", "2", "--b", "2", "--c", "1", "--n", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lhs"], "4");
    assert_eq!(v["rhs"], "32");
    assert_eq!(v["holds"], true);
}
