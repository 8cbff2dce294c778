//! Golden-corpus driver shared by the CLI tests and the acceptance suite.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_parchern")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn corpus_dir(kind: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("corpus")
        .join(kind)
}

pub fn scene_files(kind: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir(kind))
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "pch"))
        .collect();
    files.sort();
    files
}

/// Compares `--json` output of every valid scene with its `.json` golden
/// file. With `UPDATE_GOLDEN=1` the goldens are rewritten instead.
pub fn check_valid_corpus() -> Result<usize, String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let files = scene_files("valid");
    for file in &files {
        let out = run(&["--json", file.to_str().unwrap()]);
        let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let golden = file.with_extension("json");
        if update {
            std::fs::write(&golden, &stdout).map_err(|e| e.to_string())?;
            continue;
        }
        if out.status.code() != Some(0) {
            return Err(format!(
                "{} exited with {:?}: {}",
                file.display(),
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let expected =
            std::fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
        if expected != stdout {
            return Err(format!("{} differs from its golden report", file.display()));
        }
    }
    Ok(files.len())
}

/// Reads the `# expect: exit C at L:C` header of an invalid scene.
pub fn expectation(file: &Path) -> (i32, String) {
    let text = std::fs::read_to_string(file).expect("scene readable");
    let header = text.lines().next().unwrap_or_default();
    let rest = header
        .strip_prefix("# expect: exit ")
        .unwrap_or_else(|| panic!("{} lacks an expect header", file.display()));
    let (code, pos) = rest.split_once(" at ").expect("`exit C at L:C`");
    (
        code.trim().parse().expect("exit code"),
        pos.trim().to_string(),
    )
}

/// Every invalid scene exits with 2 or 3, as its header says, and its first
/// diagnostic carries the expected position.
pub fn check_invalid_corpus() -> Result<usize, String> {
    let files = scene_files("invalid");
    for file in &files {
        let (code, pos) = expectation(file);
        let path = file.to_str().unwrap();
        let out = run(&[path]);
        let got = out.status.code();
        if got != Some(code) || !(code == 2 || code == 3) {
            return Err(format!("{path}: expected exit {code}, got {got:?}"));
        }
        let stderr = String::from_utf8_lossy(&out.stderr);
        let first = stderr.lines().next().unwrap_or_default();
        let prefix = format!("{path}:{pos}: error: ");
        if !first.starts_with(&prefix) {
            return Err(format!(
                "{path}: expected a diagnostic at {pos}, got `{first}`"
            ));
        }
        let json = run(&["--json", path]);
        let report: serde_json::Value =
            serde_json::from_slice(&json.stdout).map_err(|e| format!("{path}: {e}"))?;
        let diags = report["diagnostics"]
            .as_array()
            .cloned()
            .unwrap_or_default();
        if diags.is_empty()
            || diags.iter().any(|d| {
                d["line"].as_u64().unwrap_or(0) < 1 || d["column"].as_u64().unwrap_or(0) < 1
            })
        {
            return Err(format!("{path}: JSON report lacks positioned diagnostics"));
        }
    }
    Ok(files.len())
}
