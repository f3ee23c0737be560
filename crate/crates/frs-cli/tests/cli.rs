//! Exit-code and format contract of the command-line tool: 0 for clean
//! checks, 1 for a mathematical failure, 2 for bad input, 3 for an
//! exhausted search cap, plus the file round-trip and table rendering.

use std::process::Command;

fn run(args: &[&str], envs: &[(&str, &str)]) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frs"));
    cmd.args(args);
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let output = cmd.output().expect("binary runs");
    (
        String::from_utf8(output.stdout).expect("utf-8 stdout"),
        String::from_utf8(output.stderr).expect("utf-8 stderr"),
        output.status.code().expect("exit code"),
    )
}

fn results(stdout: &str) -> serde_json::Value {
    let report: serde_json::Value = serde_json::from_str(stdout).expect("report parses");
    assert_eq!(report["schema"], "frs-report-1");
    assert_eq!(report["tool"]["name"], "frs");
    assert!(report["elapsed_ms"].is_number(), "timing lives outside results");
    report["results"].clone()
}

#[test]
fn passing_checks_exit_zero() {
    let (stdout, _, code) = run(&["verify", "--type", "III:2"], &[]);
    assert_eq!(code, 0);
    let block = results(&stdout);
    assert_eq!(block["passed"], true);
    assert_eq!(block["root_count"], 10);

    let (stdout, _, code) = run(&["build", "--type", "III:2", "--check", "killing"], &[]);
    assert_eq!(code, 0, "nondegenerate trace form passes the gate");
    let block = results(&stdout);
    assert_eq!(block["checks"]["killing"]["nondegenerate"], true);
    // The classical closed form disagrees with the trace on every root
    // of this entry; the report carries that as data, not as a failure.
    assert_eq!(block["checks"]["killing"]["closed_form_matches"], 0);
}

#[test]
fn axiom_failures_exit_one_with_witness() {
    let dir = std::env::temp_dir().join("frs-cli-test-broken");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("broken.json");
    let (dump, _, code) = run(&["dump", "--type", "I:2"], &[]);
    assert_eq!(code, 0);
    let mut doc: serde_json::Value = serde_json::from_str(&dump).expect("document parses");
    let roots = doc["roots"].as_array_mut().expect("roots array");
    roots.pop();
    std::fs::write(&path, serde_json::to_string(&doc).expect("serializes")).expect("write");

    let (stdout, _, code) = run(&["verify", "--input", path.to_str().expect("utf-8 path")], &[]);
    assert_eq!(code, 1);
    let block = results(&stdout);
    assert_eq!(block["passed"], false);
    assert_eq!(block["violations"][0]["kind"], "sum_missing");
}

#[test]
fn dumped_documents_verify_cleanly() {
    let dir = std::env::temp_dir().join("frs-cli-test-roundtrip");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("entry.json");
    let (dump, _, code) = run(&["dump", "--type", "IVprime:3"], &[]);
    assert_eq!(code, 0);
    std::fs::write(&path, &dump).expect("write");
    let (stdout, _, code) = run(&["verify", "--input", path.to_str().expect("utf-8 path")], &[]);
    assert_eq!(code, 0);
    assert_eq!(results(&stdout)["passed"], true);
}

#[test]
fn bad_input_exits_two() {
    let (_, stderr, code) = run(&["verify", "--type", "Q:7"], &[]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown family"), "stderr: {stderr}");

    let (_, stderr, code) = run(&["verify", "--type", "I:7,3"], &[]);
    assert_eq!(code, 2, "invariant factors must form a divisor chain");
    assert!(stderr.contains("divide"), "stderr: {stderr}");

    let (_, _, code) = run(&["verify", "--input", "/nonexistent/system.json"], &[]);
    assert_eq!(code, 2);

    let (_, _, code) = run(&["matrix", "--type", "Iprime:2"], &[]);
    assert_eq!(code, 2, "no matrix model for that family");

    let (_, _, code) = run(&["matrix", "--type", "II:2", "--verify", "support"], &[]);
    assert_eq!(code, 2, "support split is not defined for antisymmetric models");
}

#[test]
fn exhausted_caps_exit_three() {
    let (stdout, _, code) = run(&["weyl", "--type", "I:2,2"], &[("FRS_CAP", "10")]);
    assert_eq!(code, 3);
    let block = results(&stdout);
    assert_eq!(block["status"], "cap-exceeded");
    assert_eq!(block["cap"], 10);

    // An explicit flag overrides the environment cap.
    let (_, _, code) = run(&["weyl", "--type", "I:2,2", "--cap", "100000"], &[("FRS_CAP", "10")]);
    assert_eq!(code, 0);
}

#[test]
fn table_format_renders_the_same_results() {
    let (json_out, _, code) = run(&["weyl", "--type", "I:3"], &[]);
    assert_eq!(code, 0);
    let (table_out, _, code) = run(&["weyl", "--type", "I:3", "--format", "table"], &[]);
    assert_eq!(code, 0);
    assert!(table_out.contains("command: weyl"));
    assert!(table_out.contains("order: 24"));
    let report: serde_json::Value = serde_json::from_str(&json_out).expect("report parses");
    assert_eq!(report["results"]["order"], 24);
}

#[test]
fn expectation_contradictions_exit_one() {
    // The catalog records this pair as non-isomorphic; the search finds
    // an isomorphism, so the report contradicts the expectation.
    let (stdout, _, code) = run(&["iso", "--left", "IV:4", "--right", "V:3"], &[]);
    assert_eq!(code, 1);
    let block = results(&stdout);
    assert_eq!(block["isomorphic"], true);
    assert_eq!(block["expected"], false);
    assert_eq!(block["matches_expected"], false);
}
