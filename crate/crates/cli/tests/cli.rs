use std::process::{Command, Output};

use serde_json::Value;

fn plaque(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plaque"))
        .args(args)
        .output()
        .expect("run plaque")
}

fn json(args: &[&str]) -> Value {
    let out = plaque(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json document")
}

#[test]
fn lattice_expression() {
    let doc = json(&["lattice", "sq(2) & sq(3)"]);
    assert_eq!(doc["result"], "p=6;w=000001");
    assert_eq!(doc["schema"], "plaque/1");
    assert_eq!(doc["command"], "lattice");
    assert_eq!(json(&["lattice", "sq(4) <= sq(2)"])["result"], true);
    assert_eq!(json(&["lattice", "!sq(2) | sq(2)"])["result"], "p=1;w=1");
}

#[test]
fn index_bits_on_super_attracting_point() {
    let doc = json(&[
        "index",
        "--map",
        "quad:c=0",
        "--cycle",
        "fixed:0",
        "--critical",
        "0",
        "--radius",
        "0.25",
        "--depth",
        "8",
    ]);
    assert_eq!(doc["bits"], "11111111");
    assert_eq!(doc["class"], "p=1;w=1");
    assert_eq!(doc["config"]["depth"], 8);
    assert_eq!(doc["config"]["radius"], 0.25);
    assert_eq!(doc["config"]["engine"]["tolerances"]["p_max"], 64);
}

#[test]
fn verify_two_cycle_map() {
    let doc = json(&["verify", "--map", "quad:c=-1", "--period-max", "2", "--depth", "32"]);
    assert_eq!(doc["pass"], true);
    let rows = doc["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["matched"] == true), "{rows:?}");
}

#[test]
fn parabolic_defaults_are_echoed() {
    let doc = json(&["signature", "--map", "quad:c=0.25", "--cycle", "fixed:0.5"]);
    assert_eq!(doc["config"]["depth"], 64);
    assert_eq!(doc["config"]["radii"][0], 0.9);
    assert_eq!(doc["signature"], "p=1;w=1");
    assert_eq!(doc["verdict"], "Stable");
    assert_eq!(doc["regularity"], "Irregular");
}

#[test]
fn complex_numbers_are_pairs() {
    let doc = json(&["critpts", "--map", "-1,0,0,1"]);
    assert_eq!(doc["critical_points"], serde_json::json!([[0.0, 0.0]]));
    assert_eq!(doc["critical_values"], serde_json::json!([[-1.0, 0.0]]));
    let doc = json(&["cycles", "--map", "quad:c=-1", "--period-max", "2"]);
    let cycles = doc["cycles"].as_array().unwrap();
    assert_eq!(cycles.len(), 3);
    assert_eq!(cycles[2]["points"], serde_json::json!([[-1.0, 0.0], [0.0, 0.0]]));
}

#[test]
fn identical_flags_give_identical_bytes() {
    for args in [
        &["cycles", "--map", "quad:c=-1", "--period-max", "2", "--seed", "9"][..],
        &["verify", "--map", "siegel:golden", "--seed", "9"][..],
    ] {
        let a = plaque(args);
        let b = plaque(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn pullback_csv() {
    let out = plaque(&[
        "pullback", "--cycle", "fixed:1", "--radius", "0.1", "--depth", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("level,sample,re,im,traversals"));
    assert_eq!(lines.next(), Some("1,0,1.1,0,1"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["cycles", "--no-such-flag"][..],
        &["index", "--cycle", "orbit:1"][..],
        &["index"][..],
        &["index", "--cycle", "fixed:5"][..],
        &["cycles", "--format", "csv"][..],
        &["lattice", "sq(0"][..],
        &["critpts", "--map", "quad:c=x"][..],
    ] {
        let out = plaque(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn engine_errors_exit_one() {
    let out = plaque(&["irregular", "--map", "quad:c=-2", "--x0", "2", "--depth", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("P(c)"));
}
