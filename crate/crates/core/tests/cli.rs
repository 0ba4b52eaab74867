use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eisentool")).args(args).output().expect("eisentool runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gram_renders_theta_as_t() {
    let o = run(&["gram", "L3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains(" t") && text.contains("-t"), "{text}");
}

#[test]
fn short_count() {
    let o = run(&["short", "L4", "3", "--count"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "240");
}

#[test]
fn disc_of_l1_plus_l3() {
    let o = run(&["--json", "disc", "L1+L3"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["order"], 9);
    assert_eq!(v["f3_rank"], 2);
    let form = v["form"].as_str().unwrap();
    assert!(form == "x1^2 - x2^2" || form == "- x1^2 + x2^2", "{form}");
}

#[test]
fn unknown_check_is_a_usage_error() {
    assert_eq!(run(&["verify", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn parse_error_shows_a_caret() {
    let o = run(&["gram", "L1 +* L3"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("L1 +* L3") && err.contains('^'), "{err}");
}

#[test]
fn cap_skip_exits_3_only_when_strict() {
    let lax = run(&["verify", "group-orders", "--cap", "10"]);
    assert_eq!(lax.status.code(), Some(0));
    assert!(stdout(&lax).contains("skipped"));
    assert_eq!(run(&["verify", "group-orders", "--cap", "10", "--strict"]).status.code(), Some(3));
}

#[test]
fn text_and_json_carry_the_same_values() {
    let json = run(&["--json", "verify", "short-vectors"]);
    let text = run(&["verify", "short-vectors"]);
    assert_eq!(json.status.code(), Some(0));
    let report: Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    let text = stdout(&text);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "short-vectors pass (eisentool 0.1.0)");
    let mut n = 0;
    for line in lines {
        let (key, rest) = line.trim().split_once(" = ").unwrap();
        let (value, prov) = rest.rsplit_once(" [").unwrap();
        assert_eq!(serde_json::from_str::<Value>(value).unwrap(), report["values"][key]);
        assert_eq!(prov.trim_end_matches(']'), report["provenance"][key]);
        n += 1;
    }
    assert_eq!(n, report["values"].as_object().unwrap().len());
}

#[test]
fn group_reports_generator_count() {
    let o = run(&["--json", "group", "--lattice", "L3", "--gens", "triflections"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["order"], 648);
    assert_eq!(v["generator_count"], 12);
}

#[test]
fn overlattices_of_l1_plus_l3_give_l4() {
    let o = run(&["--json", "overlattices", "--lattice", "L1+L3"]);
    assert!(o.status.success());
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["degree"], 3);
    assert_eq!(rows[0]["result_type_guess"], "L4");
}

#[test]
fn seed_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_eisentool"))
        .args(["--json", "verify", "form-axioms"])
        .env("EISENTOOL_SEED", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["values"]["seed"], 7);
}
