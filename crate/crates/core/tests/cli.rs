use std::path::Path;
use std::process::{Command, Output};

use mrd_core::codes::{verify_mrd, DistanceMode};
use mrd_core::io::{read_code, CodeFile};

fn mrd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrd"))
        .args(args)
        .output()
        .expect("run mrd")
}

fn build(dir: &Path, name: &str, set: &str) -> String {
    let path = dir.join(name).to_str().unwrap().to_owned();
    let out = mrd(&["build", "--p", "3", "--m", "3", "--set", set, "--out", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn build_then_verify_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "code.json", "2");
    let out = mrd(&["verify", &path]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["mrd"], true);
    assert_eq!(report["linear"], false);
    assert_eq!(report["min_distance"], 2);
    assert_eq!(report["singleton_bound"], "729");

    let code = read_code(Path::new(&path)).unwrap();
    let lib = verify_mrd(&code, DistanceMode::BruteForce);
    assert_eq!(report["size"], lib.size);
    assert_eq!(report["min_distance"], lib.min_distance.unwrap());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "a.json", "2");
    let b = build(dir.path(), "b.json", "2");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v1 = mrd(&["verify", &a]);
    let v2 = mrd(&["--threads", "1", "verify", &a]);
    assert_eq!(v1.stdout, v2.stdout);
    let g1 = mrd(&["geometry", "--p", "3", "--m", "3", "--set", "2", "--sample", "200"]);
    let g2 = mrd(&["geometry", "--p", "3", "--m", "3", "--set", "2", "--sample", "200"]);
    assert_eq!(g1.status.code(), Some(0));
    assert_eq!(g1.stdout, g2.stdout);
}

#[test]
fn truncated_code_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "code.json", "2");
    let mut file: CodeFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file.words.truncate(file.words.len() - 1);
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = mrd(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["mrd"], false);
    assert_eq!(report["size_matches_bound"], false);
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["build", "--p", "4", "--m", "3"],
        vec!["build", "--p", "3", "--m", "2"],
        vec!["build", "--p", "3", "--m", "3", "--set", "1"],
        vec!["build", "--p", "3", "--m", "3", "--set", "w^x"],
        vec!["cmp", "--p", "3", "--m", "4", "--set", "2"],
        vec!["verify", "/nonexistent/code.json"],
        vec!["nosuchcommand"],
    ] {
        assert_eq!(mrd(&args).status.code(), Some(2), "{args:?}");
    }
    let garbage = dir.path().join("bad.json");
    std::fs::write(&garbage, "{\"field\": 1}").unwrap();
    assert_eq!(mrd(&["verify", garbage.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn histogram_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = build(dir.path(), "code.json", "2");
    let out = mrd(&["distdist", &path, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "rank,count\n2,123201\n3,142155\n");
    let pairs: u64 = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(pairs, 729 * 728 / 2);
}

#[test]
fn subcommands_report_pass() {
    for args in [
        vec!["cmp", "--p", "3", "--m", "3", "--set", "2"],
        vec!["splash", "--p", "3", "--m", "3", "--a", "2"],
        vec!["field-info", "--p", "2", "--h", "2", "--m", "3"],
    ] {
        let out = mrd(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        json(&out);
    }
}
