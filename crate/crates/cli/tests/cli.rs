use std::process::{Command, Output};

use serde_json::Value;

fn efp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efp")).args(args).output().expect("efp runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_small_case() {
    let out = efp(&["eval", "--r", "2", "--s", "1", "--q", "0", "--alpha", "1/2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "efp-report/1");
    assert_eq!(v["results"]["(2,1,0)"]["F"], "3/4");
    assert_eq!(v["results"]["(2,1,0)"]["F_decimal"]["precision_bits"], 512);
}

#[test]
fn poly_coefficients() {
    let out = efp(&["poly", "--r", "2", "--s", "1", "--q", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["results"]["(2,1,0)"]["coefficients"], serde_json::json!(["1", "0", "-1"]));
}

#[test]
fn empty_rectangle_is_zero_with_note() {
    let out = efp(&["eval", "--r", "1", "--s", "2", "--q", "0", "--alpha", "1/2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["results"]["(1,2,0)"]["F"], "0");
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn decimal_alpha_rejected() {
    let out = efp(&["eval", "--r", "2", "--s", "1", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid-input");
}

#[test]
fn malformed_fraction_rejected() {
    for bad in ["1/0", "x", "1/2/3"] {
        let out = efp(&["eval", "--r", "2", "--s", "1", "--alpha", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn polynomial_continues_past_unit_interval() {
    let out = efp(&["eval", "--r", "2", "--s", "1", "--alpha", "3/2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["results"]["(2,1,0)"]["F"], "-5/4");
}

#[test]
fn regime_mismatch_is_domain_error() {
    let out = efp(&["asym", "ordered", "--v", "1/2", "--alpha", "1/2", "--s", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_commands_pass() {
    for args in [
        &["verify", "sigma-form", "--max-n", "6"][..],
        &["verify", "oracles", "--max-n", "4"],
        &["verify", "alpha0", "--max-r", "5"],
        &["verify", "alpha1", "--max-r", "5"],
    ] {
        let out = efp(args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(json(&out)["pass"], true, "{args:?}");
    }
}

#[test]
fn disordered_scan_rows() {
    let out = efp(&["--precision-bits", "128", "asym", "disordered", "--v", "1/2", "--alpha", "1/2", "--s", "4,8"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["results"].as_object().unwrap();
    assert_eq!(rows.keys().collect::<Vec<_>>(), ["s=4", "s=8"]);
    assert_eq!(rows["s=8"]["r"], 16);
}

#[test]
fn csv_layout() {
    let out = efp(&["--format", "csv", "verify", "sigma-form", "--max-n", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,residual,pass,precision_bits"));
    assert!(lines.next().unwrap().starts_with("\"(1,1,0)\""));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["poly", "--r", "3", "--s", "2", "--q", "1"];
    let direct = efp(&args);
    let mut with_out = vec!["--out", path.to_str().unwrap()];
    with_out.extend(args);
    let out = efp(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["--precision-bits", "256", "asym", "hyp", "--v", "1/2", "--alpha", "1/16", "--s", "2,4"];
    let a = efp(&args);
    let b = efp(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fredholm_converges() {
    let out = efp(&["--precision-bits", "128", "asym", "fredholm", "--r", "3", "--s", "2", "--alpha", "1/2", "--m", "16,32"]);
    assert!(out.status.success());
    let v = json(&out);
    let rows = v["results"].as_object().unwrap();
    assert!(rows.contains_key("exact") && rows.contains_key("m=32"));
}
