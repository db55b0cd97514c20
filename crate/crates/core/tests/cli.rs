use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use zetalab::cli::{self, CliError};
use zetalab::zeta::ZetaError;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn curve(name: &str) -> String {
    repo_root().join("curves").join(name).display().to_string()
}

fn zetalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .env_remove(cli::CACHE_ENV)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON error object")
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(repo_root().join("schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(report: &Value) {
    let v = validator();
    let errors: Vec<String> = v.iter_errors(report).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn analyze_supersingular_elliptic_curve() {
    let out = zetalab(&["analyze", "--curve", &curve("elliptic_f2.toml"), "--max-degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_valid(&r);
    assert_eq!(r["zeta"]["P"], serde_json::json!(["1", "0", "2"]));
    assert_eq!(r["zeta"]["h"], "3");
    assert_eq!(r["counts"]["N"], serde_json::json!([3, 9, 9, 9, 33]));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    assert_eq!(r["ok"], true);
}

#[test]
fn analyze_projective_line_residues() {
    let out = zetalab(&["analyze", "--curve", &curve("p1_f3.toml"), "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["zeta"]["P"], serde_json::json!(["1"]));
    assert_eq!(r["zeta"]["residues"]["s0"]["coeff"], "-1/2");
    assert_eq!(r["zeta"]["residues"]["s1"]["coeff"], "3/2");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let out = zetalab(&["analyze", "--curve", "/nonexistent/curve.toml", "--max-degree", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let e = stderr_json(&out);
    assert_eq!(e["error"]["kind"], "ParseError");
    assert_valid(&e);

    let out = zetalab(&["analyze", "--curve", &curve("genus2_f5.toml"), "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "UsageError");

    let out = zetalab(&["verify", "--curve", &curve("p1_f2.toml"), "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_valid(&stderr_json(&out));

    let out = zetalab(&["nf", "--disc", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "InvalidDiscriminant");

    let out = zetalab(&["nf", "--disc", "23", "--battery"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(zetalab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(zetalab(&["analyze", "--curve"]).status.code(), Some(2));
}

#[test]
fn invalid_curve_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "[curve]\nmodel = \"hyperelliptic\"\np = 5\nf = [0, 0, 0, 0, 1]\n").unwrap();
    let out = zetalab(&["analyze", "--curve", path.to_str().unwrap(), "--max-degree", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"]["kind"], "InvalidCurve");
}

#[test]
fn failed_identities_map_to_exit_1() {
    let e = CliError::Zeta(ZetaError::CountsInconsistent { degree: 3, coeff: "1/2".into() });
    assert_eq!(e.exit_code(), cli::EXIT_CHECK_FAILED);
    assert_valid(&e.to_json("analyze"));
    let failed = serde_json::json!({"ok": false});
    assert_eq!(cli::exit_code_for(&failed), 1);
    assert_eq!(cli::exit_code_for(&serde_json::json!({"ok": true})), 0);
}

#[test]
fn verify_poisson_grid() {
    let out = zetalab(&["verify", "--curve", &curve("elliptic_f2.toml"), "--suite", "poisson"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_valid(&r);
    assert_eq!(r["checks"].as_array().unwrap().len(), 77);
}

#[test]
fn verify_is_deterministic_under_seed() {
    let args = ["verify", "--curve", &curve("elliptic_f3.toml"), "--suite", "explicit", "--seed", "1"];
    let a = stdout_json(&zetalab(&args));
    let b = stdout_json(&zetalab(&args));
    assert_eq!(a["checks"].as_array().unwrap().len(), 20);
    assert_eq!(a["ok"], true);
    assert_eq!(without_timings(a.clone()), without_timings(b));
    let c = stdout_json(&zetalab(&["verify", "--curve", &curve("elliptic_f3.toml"), "--suite", "explicit", "--seed", "2"]));
    assert_ne!(a["checks"], c["checks"]);
}

#[test]
fn every_report_kind_matches_schema() {
    for args in [
        vec!["verify", "--curve", &curve("p1_f2.toml"), "--suite", "all"],
        vec!["verify", "--curve", &curve("genus2_f5.toml"), "--suite", "tate-iwasawa"],
        vec!["nf", "--disc", "23"],
        vec!["nf", "--riemann", "0.5+14.1i"],
        vec!["nf", "--battery"],
    ] {
        let out = zetalab(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_valid(&stdout_json(&out));
    }
}

#[test]
fn number_field_examples() {
    let r = stdout_json(&zetalab(&["nf", "--disc", "23"]));
    assert_eq!(r["field"]["h"], 3);
    let residue = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "residue_identity").unwrap();
    assert!(residue["detail"]["error"].as_f64().unwrap() < 1e-10);

    let r = stdout_json(&zetalab(&["nf", "--riemann", "2"]));
    let xi = r["xi"]["xi"]["re"].as_f64().unwrap();
    assert!((xi - std::f64::consts::PI / 6.0).abs() < 1e-9);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = zetalab(&["analyze", "--curve", &curve("p1_f2.toml"), "--max-degree", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["command"], "analyze");
}

#[test]
fn cache_round_trip_is_byte_identical_modulo_timings() {
    let flag_dir = tempfile::tempdir().unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_zetalab"))
            .args(["analyze", "--curve", &curve("elliptic_f3.toml"), "--max-degree", "6"])
            .args(["--cache", flag_dir.path().to_str().unwrap()])
            .env(cli::CACHE_ENV, env_dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    let (a, b) = (stdout_json(&first), stdout_json(&second));
    assert_eq!(a["timings"]["cache_hits"], 0);
    assert_eq!(b["timings"]["cache_hits"], 6);
    // the environment variable wins over the flag
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 0);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
    let strip = |v: Value| cli::render(&without_timings(v)).into_bytes();
    assert_eq!(strip(a), strip(b));
}
