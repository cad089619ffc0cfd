//! End-to-end behaviour of the `latgen` binary: outputs, exit codes,
//! stream discipline and determinism.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const CHAIN3: &str = r#"{"n":3,"covers":[[0,1],[1,2]]}"#;
const B2: &str = r#"{"n":4,"covers":[[0,1],[0,2],[1,3],[2,3]]}"#;

fn latgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latgen"))
        .args(args)
        .env_remove("LATGEN_SEED")
        .output()
        .expect("binary runs")
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn assert_error(out: &Output, expected: i32) {
    assert_eq!(code(out), expected, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "errors must not reach stdout");
    assert!(!out.stderr.is_empty());
}

#[test]
fn analyze_chain() {
    let f = file(CHAIN3);
    let out = latgen(&["analyze", path(&f)]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["gamma"], serde_json::json!([0, 2]));
    assert_eq!(r["phi"], serde_json::json!([0, 2]));
    assert_eq!(r["gamma_equals_phi"], true);
}

#[test]
fn analyze_diamond_has_two_maximal_sets() {
    let f = file(B2);
    let r = json(&latgen(&["analyze", path(&f)]));
    assert_eq!(r["maximal"], serde_json::json!([[0, 1, 3], [0, 2, 3]]));
}

#[test]
fn analyze_under_both_conventions() {
    let f = file(CHAIN3);
    let r = json(&latgen(&["analyze", path(&f), "--conventions", "both"]));
    assert_eq!(r["standard"]["gamma"], serde_json::json!([0, 2]));
    // without the conventions every element of a chain is indispensable
    assert_eq!(r["none"]["gamma"], serde_json::json!([]));
}

#[test]
fn semilattice_signature() {
    let tree = file(r#"{"n":4,"covers":[[0,1],[0,2],[1,3],[2,3]]}"#);
    let r = json(&latgen(&["analyze", path(&tree), "--signature", "semilattice"]));
    assert_eq!(r["gamma"], serde_json::json!([0, 3]));
}

#[test]
fn exit_codes() {
    let bad = file(r#"{"n":3,"covers":[[0,1],[1,"#);
    assert_error(&latgen(&["analyze", path(&bad)]), 2);
    let cyclic = file(r#"{"n":2,"covers":[[0,1],[1,0]]}"#);
    assert_error(&latgen(&["analyze", path(&cyclic)]), 2);
    let not_lattice = file(r#"{"n":4,"covers":[[0,1],[0,2],[0,3]]}"#);
    assert_error(&latgen(&["analyze", path(&not_lattice)]), 3);
    let big = file(&serde_json::json!({"n": 17, "covers": (0..16).map(|i| [i, i + 1]).collect::<Vec<_>>()}).to_string());
    assert_error(&latgen(&["analyze", path(&big)]), 4);
    assert_eq!(code(&latgen(&["analyze", path(&big), "--analysis-cap", "17"])), 0);
    assert_error(&latgen(&["enumerate", "7"]), 4);
    assert_error(&latgen(&["analyze", "/nonexistent/lattice.json"]), 2);
    assert_error(&latgen(&["no-such-command"]), 2);
    assert_error(&latgen(&["verify-paper", "--seed", "banana"]), 2);
}

#[test]
fn enumerate_corpus() {
    let r = json(&latgen(&["enumerate", "3"]));
    let res = &r["results"][0];
    assert_eq!(res["structures"], res["gamma_equals_phi"]);
    let r = json(&latgen(&["enumerate", "5", "--signature", "semilattice"]));
    assert_eq!(r["results"][0]["dichotomy_violations"], 0);
    assert_eq!(r["results"][0]["oracle_mismatches"], 0);
    let r = json(&latgen(&["enumerate", "1"]));
    assert_eq!(r["results"][0]["structures"], 1);
    assert_eq!(r["results"][0]["gamma_is_carrier"], 1);
}

#[test]
fn truncation_dot_is_a_ladder() {
    let out = latgen(&["truncate", "omega", "3", "--format", "dot"]);
    assert_eq!(code(&out), 0);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 8);
    assert_eq!(dot.matches("->").count(), 10);
    assert!(dot.contains("rankdir=BT"));
}

#[test]
fn export_dot_highlights() {
    let f = file(CHAIN3);
    let dot = String::from_utf8(latgen(&["export-dot", path(&f)]).stdout).unwrap();
    assert_eq!(dot.matches("->").count(), 2);
    assert_eq!(dot.matches("class=\"gamma\"").count(), 2);
}

#[test]
fn closure_of_a_cofinite_set() {
    let f = file(r#"{"family":"omega","kind":"cofinite","blocks":[],"excluded":[{"top":true,"bit":0}]}"#);
    let r = json(&latgen(&["closure", path(&f)]));
    assert_eq!(r["input_is_closed"], false);
    assert_eq!(r["evidence"]["by"]["rule"], "limit");
    let f = file(r#"{"family":"omega","kind":"cofinite","blocks":[],"excluded":[{"n":0,"m":0,"bit":1}]}"#);
    assert_eq!(json(&latgen(&["closure", path(&f)]))["input_is_closed"], true);
    let bad = file(r#"{"family":"omega","kind":"positive","blocks":[{"t":"segment"}]}"#);
    assert_error(&latgen(&["closure", path(&bad)]), 2);
}

#[test]
fn verify_paper_passes_in_every_supported_mode() {
    for extra in [&[][..], &["--completeness", "join-complete"], &["--conventions", "none"], &["--conventions", "both"]] {
        let mut args = vec!["verify-paper", "--no-timing"];
        args.extend_from_slice(extra);
        let out = latgen(&args);
        assert_eq!(code(&out), 0, "{extra:?}: {}", String::from_utf8_lossy(&out.stderr));
        let r = json(&out);
        assert_eq!(r["summary"]["failed"], 0);
        for c in r["claims"].as_array().unwrap() {
            let status = c["status"].as_str().unwrap();
            assert!(status == "verified" || status == "instance-verified", "{c}");
        }
    }
}

#[test]
fn verify_paper_fails_without_infinitary_joins() {
    let out = latgen(&["verify-paper", "--completeness", "finitary", "--no-timing"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega-sq.gamma-closure-is-phi"));
    let r = json(&out);
    assert!(r["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn outputs_are_deterministic() {
    let f = file(B2);
    for args in [
        vec!["analyze", path(&f)],
        vec!["export-dot", path(&f), "--highlight", "maximal"],
        vec!["verify-paper", "--no-timing", "--bound", "6", "--trials", "50"],
    ] {
        assert_eq!(latgen(&args).stdout, latgen(&args).stdout, "{args:?}");
    }
}

#[test]
fn seed_comes_from_flag_or_environment() {
    let args = ["verify-paper", "--no-timing", "--bound", "4", "--trials", "20"];
    assert_eq!(json(&latgen(&args))["seed"], 0xA11CE);
    let out = Command::new(env!("CARGO_BIN_EXE_latgen"))
        .args(args)
        .env("LATGEN_SEED", "0x2A")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "7"]);
    assert_eq!(json(&latgen(&with_flag))["seed"], 7);
}

#[test]
fn help_goes_to_stdout() {
    let out = latgen(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify-paper"));
}
