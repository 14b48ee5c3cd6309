use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lieavg(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lieavg"));
    cmd.args(args).env_remove("LIEAVG_CACHE_DIR").env_remove("LIEAVG_CONFIG");
    cmd.env_remove("LIEAVG_SAMPLES").env_remove("LIEAVG_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

fn exact(v: &Value) -> (String, String) {
    (
        v["exact"]["numerator"].as_str().unwrap().to_string(),
        v["exact"]["denominator"].as_str().unwrap().to_string(),
    )
}

#[test]
fn documented_examples() {
    let v = json(&lieavg(&["expect-trace", "--group", "sp", "--rank", "stable", "--lambda", "2"], &[]));
    assert_eq!(exact(&v), ("-1".into(), "1".into()));
    assert_eq!(v["metadata"]["stable_range"], true);

    let v = json(&lieavg(&["ratio", "--gamma", "2", "--coeffs", "c1=1/2,c2=1/3"], &[]));
    assert_eq!(exact(&v), ("11".into(), "24".into()));

    let v = json(&lieavg(
        &["mc-verify", "--group", "sp", "--n", "1", "--lambda", "1,1,1,1", "--samples", "200000", "--seed", "42"],
        &[],
    ));
    let mean = v["mc"]["mean"].as_f64().unwrap();
    let z = v["data"]["z_score"].as_f64().unwrap();
    assert!((mean - 2.0).abs() < 0.05);
    assert!(z.abs() < 4.0);
    assert_eq!(v["data"]["reference"]["exact"]["numerator"], "2");
    assert_eq!(v["metadata"]["stable_range"], false);
}

#[test]
fn exit_code_contract() {
    let out = lieavg(&["expect-trace", "--group", "sp", "--lambda", "x"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = lieavg(&["ratio", "--gamma", "2", "--coeffs", "c1=1/2,c1=1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = lieavg(&["expect-trace", "--group", "so-even", "--rank", "2", "--lambda", "2,1"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mc-verify"));
    let out = lieavg(&["g", "--lambda", "2,2", "--method", "rains:2"], &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exact_output_is_byte_stable() {
    let args = ["expect-twisted", "--group", "so-odd", "--gamma", "2", "--lambda", "2,1,1"];
    let a = lieavg(&args, &[]);
    let b = lieavg(&args, &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["mc-verify", "--group", "so-even", "--n", "2", "--lambda", "2", "--samples", "2000", "--seed", "3"];
    assert_eq!(lieavg(&args, &[]).stdout, lieavg(&[&args[..], &["--threads", "1"]].concat(), &[]).stdout);
}

#[test]
fn other_commands() {
    let v = json(&lieavg(&["lr", "--lambda", "3,2,1", "--mu", "2,1", "--nu", "2,1"], &[]));
    assert_eq!(exact(&v).0, "2");
    let v = json(&lieavg(&["g", "--lambda", "2,2,2", "--method", "brute"], &[]));
    assert_eq!(exact(&v).0, "7");
    let v = json(&lieavg(&["branch", "--group", "so-odd", "--lambda", "2"], &[]));
    assert_eq!(v["data"]["coefficients"]["2"], "1");
    assert_eq!(v["data"]["coefficients"]["0"], "1");
    let v = json(&lieavg(&["asymptotics", "--group", "so-odd", "--coeffs", "c1=0.3"], &[]));
    assert!((v["float"].as_f64().unwrap() - (-0.255f64).exp()).abs() < 1e-12);
    let out = lieavg(&["--pretty", "lr", "--lambda", "2,1", "--mu", "1", "--nu", "1,1"], &[]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("exact"));
}

#[test]
fn selftest_passes() {
    let out = lieavg(&["--selftest"], &[]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
}

fn cache_file(dir: &Path, k: usize) -> std::path::PathBuf {
    dir.join(format!("chartable-{k}.json"))
}

#[test]
fn character_table_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = lieavg(&["char-table", "--k", "6", "--cache-dir", d], &[]);
    let v = json(&first);
    assert_eq!(v["data"]["labels"].as_array().unwrap().len(), 11);
    let stored: Value = serde_json::from_str(&fs::read_to_string(cache_file(dir.path(), 6)).unwrap()).unwrap();
    assert_eq!(stored["format"], 1);
    assert_eq!(stored["k"], 6);

    let second = lieavg(&["char-table", "--k", "6"], &[("LIEAVG_CACHE_DIR", d)]);
    assert_eq!(first.stdout, second.stdout);

    fs::write(cache_file(dir.path(), 6), "garbage").unwrap();
    let third = lieavg(&["char-table", "--k", "6", "--cache-dir", d], &[]);
    assert_eq!(first.stdout, third.stdout);
    assert!(serde_json::from_str::<Value>(&fs::read_to_string(cache_file(dir.path(), 6)).unwrap()).is_ok());
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("lieavg.toml");
    fs::write(&cfg, "samples = 1000\nseed = 5\n").unwrap();
    let c = cfg.to_str().unwrap();
    let args = ["mc-verify", "--group", "sp", "--n", "2", "--lambda", "2"];
    let v = json(&lieavg(&[&args[..], &["--config", c]].concat(), &[]));
    assert_eq!(v["mc"]["samples"], 1000);
    assert_eq!(v["mc"]["seed"], 5);
    let v = json(&lieavg(&args, &[("LIEAVG_CONFIG", c), ("LIEAVG_SEED", "6")]));
    assert_eq!((v["mc"]["samples"].as_u64(), v["mc"]["seed"].as_u64()), (Some(1000), Some(6)));
    let v = json(&lieavg(&[&args[..], &["--seed", "7", "--samples", "500"]].concat(), &[("LIEAVG_CONFIG", c), ("LIEAVG_SEED", "6")]));
    assert_eq!((v["mc"]["samples"].as_u64(), v["mc"]["seed"].as_u64()), (Some(500), Some(7)));
}
