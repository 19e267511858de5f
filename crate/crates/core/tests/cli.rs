use std::path::PathBuf;
use std::process::{Command, Output};

fn treegmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treegmf")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("treegmf-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn trees_lists_every_class() {
    let out = treegmf(&["trees", "--n", "7", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().map(Vec::len), Some(11));
}

#[test]
fn gmf_oracle_agrees() {
    let out = treegmf(&["gmf", "star:5", "--basis", "s", "--lambda", "3,1,1", "--oracle", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_writes_reports() {
    let dir = scratch("verify");
    let out = treegmf(&["verify", "--n", "6", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.trim_end().ends_with("PASS"), "{stdout}");
    assert!(dir.join("verify-n6.json").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn signed_forgotten_fails_with_exit_one() {
    let dir = scratch("signed");
    let out = treegmf(&["verify", "--n", "4", "--basis", "f", "--mode", "signed", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bad_input_exits_two() {
    let out = treegmf(&["gmf", "path:4", "--basis", "x", "--lambda", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = treegmf(&["gmf", "path:4", "--basis", "m", "--lambda", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn poset_dot() {
    let out = treegmf(&["poset", "--n", "6", "--dot"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph"));
}
