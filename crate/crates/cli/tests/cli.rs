//! End-to-end runs of the `ro2alg` binary.

use std::process::{Command, Output};

fn ro2alg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ro2alg"))
        .args(args)
        .env_remove("RO2ALG_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = ro2alg(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn rank_one_dims_are_one_between_zero_and_m() {
    let v = json(&["dims", "--k", "-3..5", "--v-size", "0..4"]);
    for row in v["rows"].as_array().unwrap() {
        let k = row["grading"]["k"].as_i64().unwrap();
        let m: u64 = row["grading"]["V"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).sum();
        let expected = u64::from((0..=i64::try_from(m).unwrap()).contains(&k));
        assert_eq!(row["dim"].as_u64(), Some(expected), "{row}");
    }
}

#[test]
fn rank_one_table_layout() {
    let out = ro2alg(&["dims", "--k", "0..2", "--v-size", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), ["k\\m", "0", "1", "2"]);
    assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["0", "1", "1", "1"]);
    assert_eq!(lines[3].split_whitespace().collect::<Vec<_>>(), ["2", "0", "0", "1"]);
}

#[test]
fn borel_is_additive() {
    let out = ro2alg(&["verify", "additive", "--backend", "borel"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS additive [borel]"));
}

#[test]
fn bredon_is_not_invertible() {
    let out = ro2alg(&["verify", "invertible", "--backend", "bredon"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reconstruction_matches_alexander() {
    let out = ro2alg(&["reconstruct-nc", "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("N(C)_0: dim 1"));
    assert!(text.contains("N(C)_1: dim 0"));
    assert!(text.contains("N(C)_2: dim 2"));
    assert!(text.contains("Alexander cross-check: predicted [1, 0, 2, 2, 7], reconstructed [1, 0, 2, 2, 7]: agree"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ro2alg(&["dims", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(ro2alg(&["dims", "--backend", "nonsense"]).status.code(), Some(2));
    assert_eq!(ro2alg(&["verify", "exactness", "--backend", "bordism-model"]).status.code(), Some(2));
}

#[test]
fn window_exhaustion_exits_three() {
    let out = ro2alg(&["reconstruct-nc", "--max-degree", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window exceeded"));
}

#[test]
fn verify_all_passes() {
    let out = ro2alg(&["verify", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn json_reports_parse() {
    assert_eq!(json(&["verify", "conner-floyd"])["passed"], true);
    assert_eq!(json(&["alexander", "--max-degree", "6"])["predicted"], serde_json::json!([1, 0, 2, 2, 7, 9, 19]));
    assert_eq!(json(&["gn-cohomology", "4"])["dims"], serde_json::json!([1, 4, 6, 4, 1]));
    assert_eq!(json(&["circuits", "--rank", "3"])["circuits"].as_array().unwrap().len(), 14);
}

#[test]
fn gn_products_reduce() {
    let v = json(&["gn-cohomology", "3", "--product", "p2^2", "p3"]);
    assert_eq!(v["product"], "p1*p2*p3");
    assert_eq!(v["top_power"], "p1*p2*p3");
}

#[test]
fn free_gt_law_file_round_trips() {
    let law = json(&["fgl", "--universal", "--trunc", "6"]);
    let dir = std::env::temp_dir().join(format!("ro2alg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("law.json");
    std::fs::write(&path, serde_json::to_string(&law).unwrap()).unwrap();
    let file = path.to_str().unwrap();
    let from_file = json(&["dims", "--backend", "free-gt", file, "--k", "-2..2", "--v-size", "0..2"]);
    let again = json(&["fgl", "--backend", "free-gt", file, "--trunc", "6"]);
    assert_eq!(again["fgl"]["coefficients"], law["fgl"]["coefficients"]);
    assert_eq!(ro2alg(&["verify", "exactness", "--backend", &format!("free-gt:{file}"), "--max-rank", "1"]).status.code(), Some(0));
    assert!(from_file["rows"].as_array().unwrap().iter().any(|r| r["dim"].as_u64() > Some(0)));
    std::fs::remove_dir_all(&dir).unwrap();
}
