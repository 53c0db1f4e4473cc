use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasimax"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_pair_brute() {
    let out = run(&[
        "check-pair",
        "--field",
        "17",
        "--a",
        "4",
        "--b",
        "8",
        "--method",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 17);
    assert_eq!(v["is_maximal"], true);
}

#[test]
fn check_pair_negative_and_usage() {
    // Q_{4,4} over 13 is admissible but never maximal.
    let out = run(&[
        "check-pair",
        "--field",
        "13",
        "--a",
        "4",
        "--b",
        "4",
        "--method",
        "brute",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["is_maximal"], false);
    let out = run(&["check-pair", "--field", "17", "--a", "0", "--b", "8"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-pair", "--field", "18", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-pair", "--field", "17", "--a", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-pair", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_pair_extension_field_polynomials() {
    let out = run(&[
        "check-pair",
        "--field",
        "5^2/2,1,1",
        "--a",
        "t",
        "--b",
        "t^3",
        "--method",
        "equation",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["check-pair", "--field", "7^2/3,1,1", "--a", "3t", "--b", "1-3t"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn plan_and_build() {
    let out = run(&["plan", "--n", "40"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "unsupported");
    assert_eq!(v["reason"], "open_exception");
    let out = run(&["plan", "--n", "48"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["factors"], serde_json::json!([16, 3]));
    let out = run(&["build", "--n", "26"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn build_round_trips_through_count_triples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q27.txt");
    let out = run(&["build", "--n", "27", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["count-triples", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 27);
    assert_eq!(v["is_maximal"], true);
}

#[test]
fn build_json_and_injection() {
    let out = run(&["build", "--n", "27", "--format", "json", "--injection", "8,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["factors"], serde_json::json!([9, 3]));
    assert_eq!(v["table"].as_array().unwrap().len(), 27);
    let out = run(&["build", "--n", "27", "--injection", "1,1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_triples_rejects_non_latin_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "0 1\n0 1\n").unwrap();
    let out = run(&["count-triples", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["count-triples", "--file", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weil() {
    let out = run(&["weil", "--k", "3", "--degrees", "1,1,1", "--q", "46"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);
    let out = run(&["weil", "--k", "3", "--degrees", "1,1,1", "--q", "45"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["weil", "--k", "5", "--degrees", "1,1,2,2,3", "--threshold"]);
    assert_eq!(json(&out)["threshold"], 13056);
    let out = run(&["weil", "--k", "2", "--degrees", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scans() {
    let out = run(&["scan", "--field", "17", "--family", "a1ma"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["hits"], serde_json::json!([]));
    let out = run(&["scan", "--field", "19", "--verify", "brute"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["hits"].as_array().unwrap().contains(&serde_json::json!(["5", "6"])));
    assert_eq!(v["disagreements"], serde_json::json!([]));
}

#[test]
fn catalog_commands() {
    let out = run(&["catalog", "--verify", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 9);
    let out = run(&["catalog", "--order", "16", "--verify", "brute"]);
    assert_eq!(json(&out)[0]["report"]["count"], 16);
    let out = run(&["catalog", "--export-ls", "21"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 21);
    let out = run(&["catalog", "--order", "17"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_identical_across_thread_counts() {
    for args in [
        vec!["scan", "--field", "3^3"],
        vec!["build", "--n", "48"],
        vec![
            "check-pair",
            "--field",
            "13",
            "--a",
            "5",
            "--b",
            "5",
            "--method",
            "brute",
        ],
    ] {
        let one = run(&[&["--threads", "1"][..], &args[..]].concat());
        let many = run(&[&["--threads", "4"][..], &args[..]].concat());
        let again = run(&args);
        assert_eq!(one.stdout, many.stdout, "{args:?}");
        assert_eq!(one.stdout, again.stdout, "{args:?}");
    }
}
