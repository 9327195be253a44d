use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cyclochow"));
    // keep the environment from leaking settings into the tests
    for (k, _) in std::env::vars() {
        if k.starts_with("CYCLOCHOW_") {
            c.env_remove(k);
        }
    }
    c
}

fn run_json(args: &[&str]) -> (Output, Value) {
    let out = bin().args(args).args(["--json", "-", "--quiet"]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).expect("report on stdout");
    (out, v)
}

#[test]
fn validate_accepts_and_rejects() {
    let (out, v) = run_json(&["validate", "--N", "5", "--A", "2", "--lambda1", "1/2", "--lambda2", "1/4"]);
    assert!(out.status.success());
    assert_eq!(v["checks"][0]["target"]["valid_A"], serde_json::json!([2, 3]));

    let (out, v) = run_json(&["validate", "--N", "3", "--A", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(v["checks"][0]["value"][0].as_str().unwrap().contains("4/3"));

    let (_, v) = run_json(&["validate", "--N", "4", "--A", "2"]);
    assert!(v["checks"][0]["value"].to_string().contains("gcd"));

    let (out, v) = run_json(&["validate", "--N", "5", "--A", "2", "--lambda1", "1/2", "--lambda2", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["checks"][1]["status"], "fail");
}

#[test]
fn rank_full_refuses_n2() {
    let (out, v) = run_json(&["rank-full", "--N", "2", "--A", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["checks"][0]["status"], "refused");
}

#[test]
fn divisors_for_7_3() {
    let (out, v) = run_json(&["verify-divisors", "--N", "7", "--A", "3"]);
    assert!(out.status.success());
    assert_eq!(v["checks"][0]["value"]["families"], 14);
    assert_eq!(v["params"]["N"], 7);
}

#[test]
fn flag_env_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "N = 7\nA = 3\nseed = 11\n").unwrap();
    let cfgs = cfg.to_str().unwrap();

    let (_, v) = run_json(&["validate", "--config", cfgs]);
    assert_eq!((v["params"]["N"].as_u64(), v["seed"].as_u64()), (Some(7), Some(11)));

    let out = bin()
        .args(["validate", "--config", cfgs, "--A", "4", "--json", "-", "--quiet"])
        .env("CYCLOCHOW_N", "5")
        .env("CYCLOCHOW_A", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // N from the environment beats the file; A from the flag beats both
    assert_eq!(v["params"]["N"], 5);
    assert_eq!(v["params"]["A"], 4);

    fs::write(&cfg, "bogus = 1\n").unwrap();
    let out = bin().args(["validate", "--config", cfgs]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for k in 0..2 {
        let p = dir.path().join(format!("r{k}.json"));
        let out = bin()
            .args(["report-all", "--seed", "3", "--random-pairs", "30", "--no-timings", "--quiet", "--json"])
            .arg(&p)
            .output()
            .unwrap();
        // the printed λ₂ target of the inhomogeneous system is off by a sign
        assert_eq!(out.status.code(), Some(1));
        texts.push(fs::read(&p).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let v: Value = serde_json::from_slice(&texts[0]).unwrap();
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["D_lambda2 component (printed target)"]);
}
