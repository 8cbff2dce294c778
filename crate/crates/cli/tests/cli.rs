mod common;

use std::io::Write;

use common::{check_invalid_corpus, check_valid_corpus, corpus_dir, run};
use serde_json::Value;

fn worked() -> String {
    corpus_dir("valid")
        .join("worked_rank2.pch")
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn golden_reports_are_reproduced() {
    let n = check_valid_corpus().unwrap();
    assert!(n >= 10);
}

#[test]
fn invalid_scenes_are_diagnosed() {
    let n = check_invalid_corpus().unwrap();
    assert!(n >= 10);
}

#[test]
fn verify_all_on_worked_example() {
    let out = run(&["--verify-all", "--json", "compute", &worked()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    let results = report["results"].as_array().unwrap();
    let chern = &results[0];
    assert_eq!(chern["N"], "3");
    let texts: Vec<&str> = chern["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["1", "D1", "2/9*D1^2"]);
    let kinds: Vec<&str> = results
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    assert_eq!(
        kinds,
        ["chern", "ch", "ctpoly", "grothendieck", "corollary1"]
    );
    assert!(results[3]["passed"].as_bool().unwrap());
}

#[test]
fn corrupted_tilde_fails_with_residual() {
    let out = run(&["--verify-all", "--perturb-tilde", "1", &worked()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verify grothendieck E: FAIL"));
    assert!(text.contains("residual = (-9*D1~)*h"), "{text}");
}

#[test]
fn malformed_file_gives_one_diagnostic() {
    let mut f = tempfile::Builder::new().suffix(".pch").tempfile().unwrap();
    writeln!(f, "variety X dim 2;\nrelation D1*D2 = 0").unwrap();
    let out = run(&[f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.contains(":2:19: error: expected `;`"), "{stderr}");
}

#[test]
fn unreadable_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.pch");
    let out = run(&[missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read file"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["evaluate", &worked()]).status.code(), Some(2));
}

#[test]
fn denominator_limit_flag() {
    let out = run(&["--max-denominator", "2", &worked()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the limit 2"));
}

/// Every number printed in one rendering appears in the other.
#[test]
fn text_and_json_carry_the_same_numbers() {
    for file in common::scene_files("valid") {
        let path = file.to_str().unwrap();
        let text = String::from_utf8(run(&[path]).stdout).unwrap();
        let json: Value = serde_json::from_slice(&run(&["--json", path]).stdout).unwrap();
        let mut strings = Vec::new();
        collect_texts(&json, &mut strings);
        for s in strings {
            assert!(text.contains(&s), "{path}: `{s}` missing from text output");
        }
    }
}

fn collect_texts(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match (k.as_str(), x) {
                    ("text" | "polynomial" | "residual_text" | "value" | "N", Value::String(s)) => {
                        out.push(s.clone())
                    }
                    _ => collect_texts(x, out),
                }
            }
        }
        Value::Array(xs) => xs.iter().for_each(|x| collect_texts(x, out)),
        _ => {}
    }
}

#[test]
fn random_sweep_is_deterministic() {
    let a = run(&["--random", "4", "--seed", "11", "--json"]);
    let b = run(&["--random", "4", "--seed", "11", "--json"]);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["scenes"].as_array().unwrap().len(), 4);
    let c = run(&["--random", "4", "--seed", "12", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn timings_are_opt_in() {
    let plain = String::from_utf8(run(&["--json", &worked()]).stdout).unwrap();
    assert!(!plain.contains("elapsed_us"));
    let timed = String::from_utf8(run(&["--json", "--timings", &worked()]).stdout).unwrap();
    assert!(timed.contains("elapsed_us"));
}
