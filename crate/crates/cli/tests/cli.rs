use std::process::{Command, Output};

use sellmax_core::gain::gain;
use sellmax_core::{ExponentSign, ModelParams};
use serde_json::Value;

fn sellmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sellmax")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sellmax-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn g00(mu: f64) -> f64 {
    gain(0.0, 0.0, &ModelParams::new(mu, 1.0, 1.0).unwrap(), ExponentSign::Plus).unwrap()
}

#[test]
fn regime_reports_both_classifications() {
    let out = sellmax(&["regime", "--mu", "0.5", "--sigma", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("infimum: Boundary"), "{text}");
    assert!(text.contains("supremum: Tie"), "{text}");
    assert!(text.contains("sigma^2/2 = 0.5"));

    let out = sellmax(&["regime", "--mu", "-1", "--sigma", "1", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["results"]["infimum"], "StopImmediately");
    assert_eq!(v["results"]["supremum"], "StopImmediately");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(sellmax(&["regime", "--sigma", "0"]).status.code(), Some(2));
    assert_eq!(sellmax(&["regime", "--bogus"]).status.code(), Some(2));
    assert_eq!(sellmax(&["regime", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(sellmax(&["simulate", "--rules", "sometimes"]).status.code(), Some(2));
}

#[test]
fn boundary_csv_has_every_node_and_ends_at_zero() {
    let args = ["boundary", "--mu", "0.5", "--sigma", "1", "--horizon", "1", "--steps", "200"];
    let out = sellmax(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,b,h,residual");
    assert_eq!(lines.len(), 202);
    let last: Vec<&str> = lines[201].split(',').collect();
    assert_eq!(last[0], "1");
    assert_eq!(last[1], "0");
    assert_eq!(sellmax(&args).stdout, out.stdout);
}

#[test]
fn boundary_outside_its_regime_names_the_answer() {
    let out = sellmax(&["boundary", "--mu", "1.5", "--sigma", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("WaitUntilEnd: V = J"));
}

#[test]
fn boundary_tolerance_controls_the_exit_code() {
    let out = sellmax(&["boundary", "--steps", "20", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stdout.is_empty());
}

#[test]
fn boundary_json_and_svg_round_trip_through_value() {
    let json_path = tmp("curve.json");
    let csv_path = tmp("curve.csv");
    let svg_path = tmp("curve.svg");
    let out = sellmax(&[
        "boundary", "--steps", "50", "--format", "json", "--out", json_path.to_str().unwrap(),
        "--svg", svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg") && svg.matches("<polyline").count() == 2);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["results"]["b"].as_array().unwrap().len(), 51);
    sellmax(&["boundary", "--steps", "50", "--out", csv_path.to_str().unwrap()]);

    let from_json = json(&sellmax(&["value", "--steps", "50", "--boundary-file", json_path.to_str().unwrap()]));
    let from_csv = json(&sellmax(&["value", "--steps", "50", "--boundary-file", csv_path.to_str().unwrap()]));
    let inline = json(&sellmax(&["value", "--steps", "50"]));
    let v = inline["results"]["infimum"]["value"].as_f64().unwrap();
    assert_eq!(from_json["results"]["infimum"]["value"].as_f64().unwrap(), v);
    assert!((from_csv["results"]["infimum"]["value"].as_f64().unwrap() - v).abs() < 1e-9);
    assert!(1.0 < v && v < g00(0.5));
    let threshold = inline["results"]["infimum"]["threshold"].as_array().unwrap();
    assert_eq!(threshold.len(), 51);
    assert_eq!(threshold[50][1].as_f64(), Some(1.0));

    let wrong = sellmax(&["value", "--mu", "0.3", "--boundary-file", json_path.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn value_examples() {
    let v = json(&sellmax(&["value", "--mu", "-0.5"]));
    assert_eq!(v["results"]["infimum"]["value"].as_f64().unwrap(), output_round(g00(-0.5)));
    assert_eq!(v["results"]["supremum"]["regime"], "StopImmediately");

    let v = json(&sellmax(&["value", "--t", "1", "--x", "0.3"]));
    assert_eq!(v["results"]["infimum"]["value"].as_f64().unwrap(), output_round(0.3f64.exp()));

    let out = sellmax(&["value", "--no-solve"]);
    assert_eq!(out.status.code(), Some(3));
}

fn output_round(v: f64) -> f64 {
    format!("{v:.11e}").parse().unwrap()
}

#[test]
fn simulate_examples() {
    let small = ["--paths", "20000", "--mc-steps", "200"];
    let mut args = vec!["simulate", "--rules", "immediate,terminal", "--objective", "ratio-sup", "--mu", "1"];
    args.extend(small);
    let v = json(&sellmax(&args));
    let est = v["results"]["estimates"].as_array().unwrap();
    assert!(est[1]["mean"].as_f64() > est[0]["mean"].as_f64());

    let mut args = vec!["simulate", "--rules", "immediate", "--objective", "ratio-inf", "--seed", "7"];
    args.extend(small);
    let a = sellmax(&args);
    let v = json(&a);
    let e = &v["results"]["estimates"][0];
    let (m, se) = (e["mean"].as_f64().unwrap(), e["std_error"].as_f64().unwrap());
    assert!((m - g00(0.5)).abs() < 3.0 * se, "{m} ± {se}");
    assert_eq!(sellmax(&args).stdout, a.stdout);

    let out = sellmax(&["simulate", "--rules", "boundary", "--mu", "1.5", "--paths", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_default_grids_pass() {
    let out = sellmax(&["verify", "--paths", "20000", "--mc-steps", "200", "--steps", "100"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(v["results"]["inequalities"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_rejects_parameters_outside_the_range() {
    let out = sellmax(&["verify", "--only", "pos-high", "--lambdas", "0.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not hold"));
    let out = sellmax(&["verify", "--only", "inf-terminal", "--mu", "0.5", "--paths", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_free_boundary_only() {
    let out = sellmax(&["verify", "--only", "fb", "--mu", "0.5", "--steps", "100"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    let fb = &v["results"]["free_boundary"];
    assert_eq!(fb["passed"], true);
    assert_eq!(fb["report"]["points"].as_array().unwrap().len(), 10);
    assert!(fb["report"]["max_smooth_fit"].as_f64().unwrap() <= 5e-3);
    assert!(fb["report"]["max_normal_reflection"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let path = tmp("run.conf");
    std::fs::write(&path, "# sample\nmu = 1.5\nsigma = 1\nformat = json\n").unwrap();
    let cfg = path.to_str().unwrap();
    let v = json(&sellmax(&["regime", "--config", cfg]));
    assert_eq!(v["results"]["infimum"], "WaitUntilEnd");
    let v = json(&sellmax(&["regime", "--config", cfg, "--mu", "-1"]));
    assert_eq!(v["results"]["infimum"], "StopImmediately");
    assert_eq!(v["params"]["sigma"].as_f64(), Some(1.0));

    std::fs::write(&path, "speed = 3\n").unwrap();
    assert_eq!(sellmax(&["regime", "--config", cfg]).status.code(), Some(2));
}
