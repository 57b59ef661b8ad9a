use std::path::PathBuf;
use std::process::Command;

use coregularity::classify::{classify, ClassificationReport, SurfaceSpec};
use coregularity::matgroup::presets;
use serde_json::Value;

fn coreg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coreg")).args(args).env_remove("COREG_ORDER_CAP").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("coreg-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn triangle_is_a_circle() {
    let body = r#"{"components":[{"id":0,"coeff":"1"},{"id":1,"coeff":"1"},{"id":2,"coeff":"1"}],
        "crossings":[{"at":0,"pair":[0,1]},{"at":1,"pair":[1,2]},{"at":2,"pair":[2,0]}]}"#;
    let p = temp_file("triangle.json", body);
    let (code, out, _) = coreg(&["dual-complex", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"topology": "Circle", "length": 3}));
}

#[test]
fn fractional_curve_on_a_cycle_is_rejected() {
    let body = r#"{"components":[{"id":0,"coeff":"1"},{"id":1,"coeff":"1"},{"id":2,"coeff":"1/2"}],
        "crossings":[{"at":0,"pair":[0,1]},{"at":1,"pair":[1,0]}]}"#;
    let p = temp_file("fractional.json", body);
    let (code, _, err) = coreg(&["dual-complex", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "NotLogCYShape");
}

#[test]
fn exit_codes() {
    assert_eq!(coreg(&["classify", "--surface", "p2", "--group", "typeE36"]).0, 0);
    let (code, _, err) = coreg(&["classify", "--surface", "p2", "--group", "nosuch"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["error"], "UnknownPreset");
    assert_eq!(coreg(&["bogus"]).0, 2);
    assert_eq!(coreg(&["--order-cap", "10", "classify", "--surface", "p2", "--group", "klein168"]).0, 1);
}

#[test]
fn order_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_coreg"))
        .args(["classify", "--surface", "p2", "--group", "klein168"])
        .env("COREG_ORDER_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "OrderCapExceeded");
}

#[test]
fn output_is_deterministic() {
    for args in [&["table1"][..], &["classify", "--surface", "quadric", "--pairs", "pair_diag_s4"], &["lattice", "--surface", "dp6"]] {
        let a = coreg(args);
        let b = coreg(args);
        assert_eq!(a.0, 0, "{args:?}: {}", a.2);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn text_table() {
    let (code, out, _) = coreg(&["--format", "text", "table1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 14);
    assert!(lines[0].starts_with("Group"));
    assert!(lines[13].starts_with('K'));
}

#[test]
fn reports_roundtrip_through_json() {
    for name in ["typeA_diag9", "typeB2_tetra", "typeE36", "typeH60", "valentiner"] {
        let r = classify(&SurfaceSpec::P2(presets::group(name).unwrap())).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r, "{name}");
    }
    let (_, out, _) = coreg(&["classify", "--surface", "quadric", "--pairs", "pair_c3_x_d8"]);
    let r: ClassificationReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.coregularity, 0);
    assert!(r.consistency_violations().is_empty());
}
