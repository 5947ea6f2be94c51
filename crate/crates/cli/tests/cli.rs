use std::process::{Command, Output};

use serde_json::Value;

fn saito(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_saito"))
        .args(args)
        .env_remove("SAITO_MAX_GROUP_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = saito(&all);
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn analyze_examples() {
    let out = stdout(&saito(&["analyze", "x^3*y+y^3"]));
    assert!(out.contains("weights     (2,3;9)"), "{out}");
    assert!(out.contains("chain(3,3) in x,y"));
    assert!(out.contains("G_f         Z9  (order 9, cyclic)"));

    let out = stdout(&saito(&["analyze", "x^2"]));
    assert!(out.contains("(1;2)") && out.contains("Z2  (order 2"), "{out}");

    let v = json(&["analyze", r#"{"E":[[3,0],[1,2]]}"#]);
    let w = &v["result"]["weights"];
    assert_eq!(w["canonical"], serde_json::json!([2, 2]));
    assert_eq!(w["degree"], 6);
    assert_eq!(w["gcdFactor"], 2);
    assert_eq!(
        v["result"]["groups"]["direct"]["invariantFactors"],
        serde_json::json!([6])
    );
    assert_eq!(v["tool"], "saito");
    assert_eq!(v["command"], "analyze");
}

#[test]
fn unit_exponents_are_flagged() {
    let out = stdout(&saito(&["analyze", "x*y + y^2"]));
    assert!(out.contains("[degenerate-suspect]"), "{out}");
}

#[test]
fn zeta_spot_values() {
    let out = stdout(&saito(&["zeta", "x^3*y + y^3"]));
    assert!(out.contains("classical   (1-t^3)(1-t^9)^-1"), "{out}");
    assert!(out.contains("milnor      7"));
    let v = json(&["zeta", "x^3 + x*y^2"]);
    assert_eq!(v["result"]["classical"]["factors"], serde_json::json!({"3": -1}));
    assert_eq!(v["result"]["milnorNumber"], 4);
}

#[test]
fn dual_and_roots() {
    let o = saito(&["dual", "x^3 + x*y^2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("theorem     PASS"));
    assert!(out.contains("corollary   PASS"));
    let v = json(&["dual", "x^2 + y^2"]);
    assert_eq!(v["result"]["theorem"]["equal"], true);
    assert!(v["result"]["corollary"]["skipped"].is_string());

    let v = json(&["roots", "x^3 + x*y^2"]);
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 2);
    assert_eq!(v["result"]["generatingRoots"].as_array().unwrap().len(), 1);
    let v = json(&["roots", "x^2 + y^2"]);
    assert!(v["result"]["roots"].as_array().unwrap().is_empty());
}

#[test]
fn enumeration_summary_and_stability() {
    let args = [
        "--json",
        "enumerate",
        "--max-vars",
        "2",
        "--max-exp",
        "4",
        "--sums",
    ];
    let a = saito(&args);
    let b = saito(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["theoremFail"], 0);
    assert_eq!(v["result"]["corollaryFail"], 0);
    assert_eq!(v["result"]["truncated"], false);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend_from_slice(&["--out", p]);
    let c = saito(&with_out);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);

    let tiny = stdout(&saito(&["enumerate", "--max-vars", "1", "--max-exp", "3"]));
    assert!(tiny.contains("polynomials  2"), "{tiny}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| saito(args).status.code();
    assert_eq!(
        code(&["enumerate", "--max-vars", "3", "--max-exp", "3", "--limit", "4"]),
        Some(4)
    );
    assert_eq!(code(&["enumerate", "--max-vars", "9"]), Some(64));
    assert_eq!(code(&["enumerate", "--max-exp", "1"]), Some(64));
    assert_eq!(code(&["zeta", "x^"]), Some(65));
    assert_eq!(code(&["zeta", "x^2 + x^3"]), Some(65));
    assert_eq!(code(&["zeta", "x*y + x*y"]), Some(65));
    assert_eq!(code(&["frobnicate"]), Some(64));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn parse_errors_carry_positions() {
    let o = saito(&["zeta", "x^2 + y^-1"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column"), "{err}");
}

#[test]
fn subgroup_listing_respects_the_bound() {
    let out = stdout(&saito(&["analyze", "--subgroups", "x^2 + y^2"]));
    assert!(out.contains("subgroups   5"), "{out}");
    let o = Command::new(env!("CARGO_BIN_EXE_saito"))
        .args(["analyze", "--subgroups", "x^2 + y^2"])
        .env("SAITO_MAX_GROUP_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(69));
}
