//! The `rmt` binary end to end.

use std::process::{Command, Output};

fn rmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn trace_moment_renders_descending_powers() {
    let o = rmt(&["trace-moment", "--ensemble", "gue", "--mu", "6", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5*N^4 + 10*N^2");
}

#[test]
fn trace_moment_json_round_trips() {
    let o = rmt(&["trace-moment", "--mu", "4,2", "--output", "json"]);
    let v = json(&o);
    assert_eq!(v["ensemble"], "gue");
    assert_eq!(v["index"], "4,2");
    assert_eq!(v["value"]["var"], "N");
    assert_eq!(v["value"]["coeffs"]["5"], "2");
    let fixed = rmt(&["trace-moment", "--mu", "4,2", "--n", "3"]);
    assert_eq!(stdout(&fixed), (2 * 243 + 9 * 27 + 4 * 3).to_string());
}

#[test]
fn laurent_outputs_default_to_json() {
    let o = rmt(&["xk-moment", "--ks", "2,2,2"]);
    assert_eq!(json(&o), serde_json::json!({"var": "N", "coeffs": {"-1": "1"}}));
    let c = rmt(&["cumulant", "--k", "2", "--order", "4"]);
    assert_eq!(json(&c), serde_json::json!({"var": "N", "coeffs": {"-2": "3"}}));
    let t = rmt(&["connected", "--mu", "2,2", "--output", "text"]);
    assert_eq!(stdout(&t), "1/8");
}

#[test]
fn charpoly_and_evaluations() {
    let o = rmt(&["charpoly", "--n", "2", "--points", "0"]);
    assert_eq!(stdout(&o), "-1");
    let o = rmt(&["charpoly", "--n", "1", "--power", "2"]);
    assert_eq!(stdout(&o), "t^2 + 1");
    let o = rmt(&["schur-eval", "--lambda", "2,1", "--points", "1,2,3"]);
    let b = rmt(&["schur-eval", "--lambda", "2,1", "--points", "1,2,3", "--bialternant"]);
    assert_eq!(stdout(&o), stdout(&b));
    let o = rmt(&["char-table", "--lambda", "2,2", "--mu", "2,2"]);
    assert_eq!(stdout(&o), "2");
    let o = rmt(&["oracle", "wick", "--mu", "4"]);
    assert_eq!(stdout(&o), "2*N^3 + N");
}

#[test]
fn checks_and_suites() {
    let o = rmt(&["check", "dual-cauchy", "--ensemble", "jue", "--gamma1", "1/3", "--gamma2", "1/4", "--t", "2,3", "--x", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dual-cauchy: ok"));
    let o = rmt(&["check", "genfun", "--vars", "2", "--degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let o = rmt(&["verify", "--suite", "paper-tables"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("identities checked, 0 failed"));
}

#[test]
fn skip_mc_suite_is_deterministic() {
    let a = rmt(&["verify", "all", "--skip-mc", "--output", "json"]);
    let b = rmt(&["verify", "all", "--skip-mc", "--output", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn single_monte_carlo_check_reports_z_score() {
    let o = rmt(&["verify", "mc", "--ensemble", "gue", "--n", "3", "--mu", "2", "--samples", "4000", "--seed", "42", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["target"], 9.0);
    for key in ["estimate", "se", "z"] {
        assert!(v[key].is_number(), "{key}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(rmt(&["trace-moment", "--mu", "1,3"]).status.code(), Some(64));
    assert_eq!(rmt(&["trace-moment", "--mu", "2", "--unknown"]).status.code(), Some(64));
    assert_eq!(rmt(&["verify", "--suite", "nonsense"]).status.code(), Some(64));
    let o = rmt(&["schur-moment", "--ensemble", "lue", "--gamma=-2", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(report["error"], "invalid-parameter");
    let o = rmt(&["xk-moment", "--ks", "9"]);
    assert_eq!(o.status.code(), Some(1));
    let o = rmt(&["verify", "mc", "--ensemble", "lue", "--gamma", "1/2", "--n", "2", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(rmt(&["--help"]).status.code(), Some(0));
}

#[test]
fn weight_bound_is_configurable() {
    let o = Command::new(env!("CARGO_BIN_EXE_rmt"))
        .args(["char-table", "--n", "6"])
        .env("RMT_MAX_WEIGHT", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
