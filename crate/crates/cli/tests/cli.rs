//! End-to-end runs of the `redeg` binary: JSON output, exit codes and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use redeg::classify::ClassificationReport;
use redeg::invariants::InvariantReport;
use redeg::BettiTable;
use serde_json::Value;

fn redeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus_file(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name);
    p.to_str().unwrap().to_string()
}

fn temp_file(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn analyze_ulrich() {
    for t in 2..=4u32 {
        let o = redeg(&["analyze", &corpus_file(&format!("ulrich-t{t}.ideal"))]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let rep: InvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(
            (rep.n, rep.e, rep.deg, rep.r, rep.mu, rep.cm, rep.depth, rep.reg),
            (1, 2, 2, 1, 3, false, 1, t)
        );
    }
}

#[test]
fn analyze_maximal_model() {
    let o = redeg(&["analyze", &corpus_file("maximal-e2-r2.ideal")]);
    assert_eq!(code(&o), 0);
    let rep: InvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.deg, 6);
    assert!(rep.cm);
}

#[test]
fn malformed_header_is_a_parse_error_with_position() {
    let f = temp_file("bad-header.ideal", "ring x0, x1 over GF(7)\nideal: x0\n");
    let o = redeg(&["analyze", &f]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column"), "{err}");

    let f = temp_file("bad-poly.ideal", "ring: x0, x1 over GF(7)\nideal: x0^2 + * x1\n");
    let o = redeg(&["analyze", &f]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn noether_failure_exit_code() {
    let f = temp_file("needs-change.ideal", "ring: x0, x1, x2 over GF(32003)\nideal: x2^2\n");
    assert_eq!(code(&redeg(&["--trials", "0", "analyze", &f])), 3);
    assert_eq!(code(&redeg(&["--trials", "4", "analyze", &f])), 0);
}

#[test]
fn betti_tables() {
    // Ulrich with t = 2: rows (3, 2) and (1, 2, 1)
    let o = redeg(&["betti", &corpus_file("ulrich-t2.ideal"), "--over", "0"]);
    assert_eq!(code(&o), 0);
    let t: BettiTable = serde_json::from_str(&stdout(&o)).unwrap();
    let rows: Vec<(u32, Vec<u64>)> = t.rows().into_iter().collect();
    assert_eq!(rows, vec![(0, vec![1]), (1, vec![0, 3, 2]), (2, vec![0, 1, 2, 1])]);

    // maximal model over S_e: one column of C(e + j - 1, j)
    let o = redeg(&["betti", &corpus_file("maximal-e2-r2.ideal"), "--over", "2"]);
    assert_eq!(code(&o), 0);
    let t: BettiTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 0, 1), (0, 1, 2), (0, 2, 3)]);

    // zero ideal
    let f = temp_file("zero.ideal", "ring: x0, x1, x2 over QQ\nideal:\n");
    let o = redeg(&["betti", &f]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"], serde_json::json!([[0, 0, 1]]));
}

#[test]
fn betti_over_out_of_range() {
    let o = redeg(&["betti", &corpus_file("ulrich-t2.ideal"), "--over", "3"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn truncation_needs_permission() {
    let f = corpus_file("ulrich-t4.ideal");
    let o = redeg(&["betti", &f, "--cap", "2"]);
    assert_eq!(code(&o), 5);
    let o = redeg(&["betti", &f, "--cap", "2", "--allow-truncated"]);
    assert_eq!(code(&o), 0);
    let t: BettiTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(t.truncated);
    // classify cannot proceed on a truncated table
    assert_eq!(code(&redeg(&["classify", &f, "--cap", "2"])), 5);
}

#[test]
fn classify_exit_codes_encode_labels() {
    let cases = [
        ("maximal-e2-r2.ideal", 10, "MAXIMAL"),
        ("model-acm-e3-r2.ideal", 11, "ALMOST_MAX_ACM"),
        ("model-nonacm-a.ideal", 12, "ALMOST_MAX_NONACM_A"),
        ("ulrich-t2.ideal", 13, "ALMOST_MAX_NONACM_B"),
        ("model-nonacm-c.ideal", 14, "ALMOST_MAX_NONACM_C"),
    ];
    for (file, exit, label) in cases {
        let o = redeg(&["classify", &corpus_file(file)]);
        assert_eq!(code(&o), exit, "{file}");
        let rep: ClassificationReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(rep.label.as_str(), label);
        assert!(rep.audits_passed());
    }
    // a dense complete intersection of two quadrics in P^3
    let f = temp_file(
        "ci.ideal",
        "ring: x0, x1, x2, x3 over GF(32003)\nideal: x0^2 + 3*x1*x2 - x3^2 + x0*x3, x1^2 - 2*x0*x2 + 5*x2*x3 + x3^2\n",
    );
    let o = redeg(&["classify", &f]);
    assert_eq!(code(&o), 15);
}

#[test]
fn elimination_order_files_are_converted() {
    let f = temp_file(
        "elim.ideal",
        "ring: x0, x1, x2, x3 over GF(32003)\norder: elim(1)\nideal: x0^2, x0*x1, x1^2, x0*x2^2 + x1*x3^2\n",
    );
    let o = redeg(&["analyze", &f]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rep: InvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((rep.deg, rep.r, rep.reg), (2, 1, 2));
}

#[test]
fn field_override() {
    let f = corpus_file("ulrich-t3.ideal");
    let o = redeg(&["--field", "QQ", "analyze", &f]);
    assert_eq!(code(&o), 0);
    let rep: InvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.field.to_string(), "QQ");
    assert_eq!(rep.reg, 3);
    assert_eq!(code(&redeg(&["--field", "GF(13)", "analyze", &f])), 1);
    assert_eq!(code(&redeg(&["--field", "GF(12)", "analyze", &f])), 2);
}

#[test]
fn identity_listing() {
    let o = redeg(&["identity", "--exhaustive-to", "6", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("273 of 273 triples pass"));

    let o = redeg(&["identity", "--e", "2", "--r", "2", "--m", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "e=2 m=3 r=2 lhs=-4 rhs=-4 pass");

    // m <= r: both sides vanish
    let o = redeg(&["identity", "--e", "3", "--r", "2"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].contains("lhs=0 rhs=0") && lines[1].contains("lhs=0 rhs=0"));
}

#[test]
fn corpus_list_and_run() {
    let o = redeg(&["corpus", "list"]);
    assert_eq!(code(&o), 0);
    let listing = stdout(&o);
    for name in ["ulrich-t2", "p3-quintic-param", "p4-nonic-param", "points-conic-6"] {
        assert!(listing.contains(name), "{name}");
    }

    for name in ["ulrich-t2", "p3-quintic-param", "p4-nonic-param"] {
        let o = redeg(&["corpus", "run", name]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], Value::Bool(true));
        assert_eq!(v["results"].as_array().unwrap().len(), 2);
    }
    assert_eq!(code(&redeg(&["corpus", "run", "no-such-entry"])), 1);
}

#[test]
fn outputs_are_deterministic() {
    let f = corpus_file("model-nonacm-c.ideal");
    let a = redeg(&["--seed", "7", "classify", &f]);
    let b = redeg(&["--seed", "7", "classify", &f]);
    assert_eq!(a.stdout, b.stdout);
    let a = redeg(&["corpus", "run", "points-general-6"]);
    let b = redeg(&["corpus", "run", "points-general-6"]);
    assert_eq!(a.stdout, b.stdout);
}
