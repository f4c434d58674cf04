use std::io::Write;
use std::process::{Command, Output, Stdio};

use turan_core::{Certificate, Family};

fn turan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .env_remove("TURAN_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn solve_json(args: &[&str]) -> (i32, Certificate) {
    let mut full = vec!["solve", "--output", "json"];
    full.extend_from_slice(args);
    let out = turan(&full);
    let cert = Certificate::from_json(stdout(&out).trim()).expect("certificate json");
    (out.status.code().unwrap(), cert)
}

#[test]
fn solves_each_family() {
    let (code, cert) = solve_json(&["--family", "t", "--n", "6", "--r", "3", "--k", "5"]);
    assert_eq!((code, cert.value), (0, Some(2)));
    assert_eq!(cert.spec.family, Family::T);

    let (_, cert) = solve_json(&["--family", "tm", "--n", "7", "--r", "3", "--k", "5", "--components", "2"]);
    assert_eq!(cert.value, Some(5));

    let (_, cert) = solve_json(&["--family", "tilde", "--n", "8", "--r", "3", "--sequence", "2,2"]);
    assert_eq!(cert.value, Some(8));

    let (_, cert) = solve_json(&["--family", "conn-alpha", "--n", "5", "--r", "3", "--s", "2"]);
    assert_eq!(cert.value, Some(10));
}

#[test]
fn emitted_certificates_revalidate() {
    for args in [
        vec!["--family", "t", "--n", "7", "--r", "3", "--k", "4"],
        vec!["--family", "tm", "--n", "8", "--r", "3", "--k", "5", "--components", "2"],
        vec!["--family", "t", "--n", "6", "--r", "3", "--k", "4", "--enumerate-all"],
    ] {
        let (_, cert) = solve_json(&args);
        cert.validate().unwrap();
        let w = cert.witness.as_ref().unwrap();
        let k = cert.spec.k.unwrap();
        assert!(w.satisfies_covering(k).unwrap());
    }
}

#[test]
fn enumerates_all_witnesses() {
    let (_, cert) = solve_json(&["--family", "t", "--n", "6", "--r", "3", "--k", "4", "--enumerate-all"]);
    assert_eq!(cert.all_witnesses.map(|a| a.len()), Some(30));
}

#[test]
fn naive_and_search_agree() {
    let args = ["--family", "t", "--n", "6", "--r", "3", "--k", "4"];
    let (_, fast) = solve_json(&args);
    let mut slow_args = args.to_vec();
    slow_args.push("--naive");
    let (_, slow) = solve_json(&slow_args);
    assert_eq!(fast.value, slow.value);
    assert_eq!(fast.witness, slow.witness);
}

#[test]
fn at_most_takes_the_best_component_count() {
    let (code, cert) =
        solve_json(&["--family", "tm", "--n", "7", "--r", "3", "--k", "5", "--components", "3", "--at-most"]);
    assert_eq!(code, 0);
    assert_eq!(cert.value, Some(5));
    let out = turan(&["solve", "--family", "t", "--n", "7", "--r", "3", "--k", "5", "--at-most"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_is_a_result() {
    let (code, cert) = solve_json(&["--family", "tm", "--n", "7", "--r", "3", "--k", "5", "--components", "5"]);
    assert_eq!(code, 0);
    assert!(cert.infeasible && cert.value.is_none());
}

#[test]
fn budget_exhaustion_exits_3() {
    let (code, cert) = solve_json(&["--family", "t", "--n", "8", "--r", "3", "--k", "5", "--node-budget", "1"]);
    assert_eq!(code, 3);
    assert!(!cert.optimal);
    cert.validate().unwrap();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(turan(&["solve", "--family", "t", "--n", "6", "--r", "3"]).status.code(), Some(2));
    assert_eq!(turan(&["solve", "--family", "t", "--n", "6", "--r", "3", "--k", "9"]).status.code(), Some(2));
    assert_eq!(turan(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(turan(&["alpha", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(turan(&["bounds", "t-components", "--r", "3", "--k", "5"]).status.code(), Some(2));
}

#[test]
fn table_output() {
    let out = turan(&["solve", "--family", "t", "--n", "7", "--r", "3", "--k", "5"]);
    let text = stdout(&out);
    assert!(text.contains("spec         T:7:5:3"), "{text}");
    assert!(text.contains("value        5"));
    assert!(text.contains("optimal      yes"));
}

#[test]
fn verify_suites() {
    let out = turan(&["verify", "sandwich", "--max-l", "30"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = turan(&["verify", "thm-max", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = turan(&["verify", "average-lemma", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "average-lemma");
    assert_eq!(v["rows"][0]["pass"], true);
}

#[test]
fn failing_suite_exits_1() {
    let out = turan(&["verify", "decompose-convergence", "--max-m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("40/220"));
}

#[test]
fn bounds_commands() {
    let text = stdout(&turan(&["bounds", "t", "--r", "3", "--k", "5"]));
    assert!(text.contains("t_{3,5} in [1/6, 1/4]"), "{text}");

    let text = stdout(&turan(&["bounds", "t-components", "--r", "3", "--k", "5", "--components", "2"]));
    assert!(text.contains("[1/4, 1/4]") && text.contains("minimizers: {2,2}"), "{text}");

    let text = stdout(&turan(&["bounds", "interval", "--r", "3", "--k", "4"]));
    assert!(text.contains("π_{3,4} in [5/9, 280833/500000]"), "{text}");

    let json = stdout(&turan(&["bounds", "report", "--r", "3", "--k", "4", "--output", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["lo"], "219167/500000");
    assert_eq!(v["hi"], "4/9");
    assert!(v["derivation"].as_array().unwrap().iter().any(|s| s["citation"].as_str().unwrap().contains("0.561666")));

    let text = stdout(&turan(&[
        "bounds", "t-components", "--r", "3", "--k", "6", "-m", "2", "--entry", "3=4/9:4/9",
    ]));
    assert!(text.contains("[4/25, 4/25]"), "{text}");
}

#[test]
fn construct_then_alpha_via_stdin() {
    let graph = stdout(&turan(&["construct", "thm-max", "--n", "8"]));
    let mut child = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(["alpha", "-", "--output", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(graph.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["alpha"], 4);
    assert_eq!(v["edges"], 8);
    assert_eq!(v["sequence"], serde_json::json!([2, 2]));
}

#[test]
fn construct_kinds() {
    let json = stdout(&turan(&["construct", "turan", "--n", "5", "--k", "2", "--format", "json"]));
    let h = turan_core::io::from_json(&json).unwrap();
    assert_eq!((h.r(), h.edge_count()), (2, 6));
    let text = stdout(&turan(&["construct", "union", "--r", "3", "--sizes", "4,3"]));
    assert_eq!(turan_core::io::from_text(&text).unwrap().edge_count(), 5);
    let text = stdout(&turan(&["construct", "balanced", "--n", "9", "--r", "3", "-m", "3"]));
    assert_eq!(turan_core::io::from_text(&text).unwrap().edge_count(), 3);
    assert_eq!(turan(&["construct", "union"]).status.code(), Some(2));
}

#[test]
fn cache_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let path = path.to_str().unwrap();
    let args = ["solve", "--family", "t", "--n", "7", "--r", "3", "--k", "4", "--output", "json", "--cache", path];
    let first = stdout(&turan(&args));
    let second = stdout(&turan(&args));
    assert_eq!(first, second);
    let lines = std::fs::read_to_string(path).unwrap();
    assert_eq!(lines.lines().count(), 1);
    assert!(lines.contains(r#""key":"T:7:4:3""#));
}
