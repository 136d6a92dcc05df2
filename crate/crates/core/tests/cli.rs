//! End-to-end checks of the `gibbsdom` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gibbsdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["fixpoints", "--d", "3"]).status.code(), Some(1));
    assert_eq!(run(&["fixpoints", "--d", "0", "--J", "1", "--h", "0"]).status.code(), Some(1));
    // e^{2J} < q - 2 is outside the regime
    let out = run(&["fuzzy", "certify", "--q", "5", "--J", "0.1", "--r", "1", "--p", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hstar_rows() {
    let out = run(&["hstar-curve", "--d", "4", "--J-min", "1", "--J-max", "2", "--steps", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "J,h_star,t_star");
    assert_eq!(lines[1], "1,1.88770485053,1.53271914326");
    assert_eq!(lines.len(), 4);
}

#[test]
fn witness_empty_and_nonempty() {
    let v = json(&["fuzzy", "witness", "--q", "3", "--J", "1.5", "--r", "1"]);
    assert_eq!(v["outputs"]["empty"], false);
    let hi = v["outputs"]["interval"]["hi"].as_f64().unwrap();
    assert!((hi - 2.0 / (3f64.exp() + 2.0)).abs() < 1e-12);
    let v = json(&["fuzzy", "witness", "--q", "3", "--J", "0.2", "--r", "1"]);
    assert_eq!(v["outputs"]["empty"], true);
    assert!(v["outputs"]["interval"].is_null());
}

#[test]
fn identical_states_dominate() {
    let v = json(&["oracle", "dominates", "--d", "2", "--J1", "1", "--h1", "0", "--J2", "1", "--h2", "0"]);
    assert_eq!(v["outputs"]["oracle"], true);
    assert_eq!(v["outputs"]["analytic"], true);
}

#[test]
fn sequential_matches_parallel_and_sampler_is_seeded() {
    let args = ["oracle", "sample", "--d", "2", "--depth", "3", "--J", "0.8", "--sweeps", "2000", "--seed", "5"];
    let a = run(&args);
    let mut seq = vec!["--sequential"];
    seq.extend_from_slice(&args);
    let b = run(&seq);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let curve = ["psi-curve", "--d", "3", "--J2", "1", "--t-min", "-2", "--t-max", "2", "--steps", "50"];
    let a = run(&curve);
    let mut seq = vec!["--sequential"];
    seq.extend_from_slice(&curve);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, run(&seq).stdout);
}
