use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_krasner");

fn run(args: &[&str]) -> (i32, Value) {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("KRASNER_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

const F5: &str = r#"{"kind":"Fp","p":5}"#;
const F7: &str = r#"{"kind":"Fp","p":7}"#;
const Q: &str = r#"{"kind":"Q"}"#;
const Q5: &str = r#"{"kind":"Qp","p":5,"precision":12}"#;

#[test]
fn krasner_verify_over_q() {
    let (code, r) = run(&["krasner", "verify", "--field", Q, "--poly", "[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["jac"], "3");
    assert_eq!(r["outputs"]["disc"], "-3");
    assert_eq!(r["checks"]["jac_equals_pm_disc"], true);
    assert_eq!(r["seed"], 0);
}

#[test]
fn krasner_verify_reports_chain_rule_over_finite_fields() {
    let (code, r) = run(&["krasner", "verify", "--field", F5, "--poly", "[2,0]"]);
    assert_eq!(code, 0);
    assert_eq!(r["checks"]["chain_rule_product"], true);
    assert_eq!(r["outputs"]["chain_rule"]["splitting_field_order"], "25");
}

#[test]
fn krasner_rejects_vectors_outside_u() {
    let (code, r) = run(&["krasner", "build", "--field", Q, "--poly", "[-1,0]"]);
    assert_eq!(code, 2);
    assert!(r.is_null());
}

#[test]
fn classify_f5_quadratics() {
    let (code, r) = run(&["classify", "--field", F5, "--deg", "2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["count"], 1);
}

#[test]
fn classify_infinite_field_needs_samples() {
    assert_eq!(run(&["classify", "--field", Q5, "--deg", "2"]).0, 2);
}

#[test]
fn conic_over_f7() {
    let (code, r) = run(&["arith", "conic", "--field", F7, "--a", "1", "--b", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["valid"], true);
    let (_, r) = run(&["arith", "conic", "--field", F7, "--a", "3", "--b", "5"]);
    assert_eq!((r["outputs"]["c"].clone(), r["outputs"]["d"].clone()), (Value::from(1), Value::from(1)));
}

#[test]
fn power_sum_and_indices() {
    let (_, r) = run(&["arith", "power-sum", "--field", F7, "--m", "3", "--a", "2", "--b", "4"]);
    assert_eq!(r["outputs"]["solution"], serde_json::json!([3, 3]));
    let (_, r) = run(&["arith", "power-sum", "--field", F7, "--m", "3", "--a", "1", "--b", "3"]);
    assert!(r["outputs"]["solution"].is_null());
    let (code, r) = run(&["arith", "power-index", "--field", F7, "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["representatives"], serde_json::json!([1, 3]));
    let (code, r) = run(&["arith", "as-index", "--field", r#"{"kind":"Fq","p":3,"modulus":[1,0,1]}"#]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["index"], "3");
}

#[test]
fn coset_sum_reports_honest_booleans() {
    let (code, r) = run(&["arith", "coset-sum", "--field", r#"{"kind":"Fp","p":3}"#, "--m", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["all_cover"], false);
}

#[test]
fn four_squares_and_chains() {
    let (_, r) = run(&["arith", "four-squares", "--n", "3/2"]);
    assert_eq!(r["outputs"]["squares"], serde_json::json!(["1", "1/2", "1/2", "0"]));
    let (code, r) = run(&["arith", "sopn", "--chain", "[0,3,7]", "--cyclic"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["telescoped"], "-3");
    assert_eq!(r["checks"]["cycle_refuted"], true);
    assert_eq!(run(&["arith", "four-squares", "--n", "-1"]).0, 2);
}

#[test]
fn vadic_property_failure_exits_one() {
    let (code, r) = run(&["arith", "krasner-vadic", "--field", Q5, "--poly", "[-2,0]", "--radius", "1", "--samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["passes"], 20);
    let (code, r) = run(&["arith", "krasner-vadic", "--field", Q5, "--poly", "[-2,0]", "--radius", "0", "--samples", "40"]);
    assert_eq!(code, 1);
    assert_eq!(r["checks"]["all_samples_pass"], false);
}

#[test]
fn budget_env_is_honoured() {
    let args = ["arith", "power-index", "--field", r#"{"kind":"Fp","p":101}"#, "--m", "5"];
    assert_eq!(run(&args).0, 0);
    assert_eq!(run_env(&args, &[("KRASNER_BUDGET", "10")]).0, 2);
}

#[test]
fn padic_subcommands() {
    let q7 = r#"{"kind":"Qp","p":7,"precision":10}"#;
    let (code, r) = run(&["padic", "sqrt", "--field", q7, "--x", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["checks"]["root_squares_to_x"], true);
    let (_, r) = run(&["padic", "sqrt", "--field", q7, "--x", "3"]);
    assert!(r["outputs"]["root"].is_null());
    let (code, r) = run(&["padic", "hensel", "--field", q7, "--poly", "[-2,0,1]", "--x0", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["checks"]["residual_doubles"], true);
    let (_, r) = run(&["padic", "val", "--field", q7, "--x", "98/3"]);
    assert_eq!(r["outputs"]["valuation"], 2);
    let (_, r) = run(&["padic", "arith", "--field", Q, "--op", "div", "--x", "1", "--y", "3"]);
    assert_eq!(r["outputs"]["result"], "1/3");
    assert_eq!(run(&["padic", "arith", "--field", Q, "--op", "inv", "--x", "0"]).0, 2);
}

#[test]
fn cover_round_trip_through_ee() {
    let dir = std::env::temp_dir().join(format!("krasner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (code, r) = run(&["krasner", "cover", "--field", F5, "--poly", "[2,0]"]);
    assert_eq!(code, 0);
    let path = dir.join("cover.json");
    std::fs::write(&path, r["outputs"]["cover"].to_string()).unwrap();
    let p = path.to_str().unwrap();

    let (code, r) = run(&["ee", "image", "--cover", p]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["count"], 10);
    assert_eq!(r["checks"]["image_reenumerated"], true);

    let (code, r) = run(&["ee", "member", "--cover", p, "--point", "[2,0]"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["member"], true);
    let (_, r) = run(&["ee", "member", "--cover", p, "--point", "[1,0]"]);
    assert_eq!(r["outputs"]["member"], false);

    let (code, r) = run(&["ee", "intersect", "--cover", p, "--cover2", p, "--point", "[2,0]"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["points"], serde_json::json!([[2, 0]]));

    let (code, r) = run(&["ee", "transform", "--cover", p, "--shift", "[1,0]", "--scale", "[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(r["checks"]["transform_pointwise"], true);

    let mut tampered = r["outputs"]["cover"].clone();
    tampered["witnesses"] = serde_json::json!([{ "preimage": [0, 1], "point": [2, 0] }]);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, tampered.to_string()).unwrap();
    assert_eq!(run(&["ee", "image", "--cover", bad.to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_are_deterministic_and_out_writes_file() {
    let args = ["classify", "--field", Q5, "--deg", "2", "--samples", "60", "--seed", "9"];
    let (_, mut a) = run(&args);
    let (_, mut b) = run(&args);
    a["wall_time_ms"] = Value::Null;
    b["wall_time_ms"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["seed"], 9);

    let path = std::env::temp_dir().join(format!("krasner-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = Command::new(BIN).args(["arith", "four-squares", "--n", "7", "--out", p]).output().unwrap();
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["outputs"]["squares"], serde_json::json!(["2", "1", "1", "1"]));
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["classify"]).0, 2);
    assert_eq!(run(&["krasner", "verify", "--field", "{bad", "--poly", "[1]"]).0, 2);
}
