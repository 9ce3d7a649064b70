//! Exit-code and stderr contract of the installed binary.

use std::fs;
use std::process::Command;

fn cutdepth() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cutdepth"))
}

#[test]
fn clean_run_exits_zero_with_quiet_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("data");
    let output = cutdepth()
        .args([
            "synth", "-n", "2", "--width", "32", "--height", "24", "--seed", "1",
        ])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(output.stderr.is_empty());
    assert!(out.join("manifest.jsonl").exists());
}

#[test]
fn item_errors_exit_one_with_json_summary() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    fs::write(&a, "0.0,0.0\n").unwrap();
    fs::write(&b, "1.0,2.0\n").unwrap();
    let output = cutdepth()
        .arg("distances")
        .arg("--a")
        .arg(&a)
        .arg("--b")
        .arg(&b)
        .arg("--report")
        .arg(dir.path().join("r.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let summary: serde_json::Value =
        serde_json::from_slice(&output.stderr).expect("stderr is a JSON summary");
    assert!(!summary["item_errors"].as_array().unwrap().is_empty());
}

#[test]
fn fatal_errors_exit_two_with_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let output = cutdepth()
        .args(["augment", "--manifest"])
        .arg(dir.path().join("missing.jsonl"))
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&output.stderr).expect("stderr is a JSON object");
    assert!(err["error"].as_str().unwrap().contains("missing.jsonl"));
}

#[test]
fn env_variables_mirror_flags() {
    let dir = tempfile::tempdir().unwrap();
    let (out_a, out_b) = (dir.path().join("a"), dir.path().join("b"));
    let run = |out: &std::path::Path, use_env: bool| {
        let mut cmd = cutdepth();
        cmd.args(["synth", "-n", "2", "--width", "32", "--height", "24"]);
        if use_env {
            cmd.env("CUTDEPTH_SEED", "99");
        } else {
            cmd.args(["--seed", "99"]);
        }
        cmd.arg("--out").arg(out);
        assert!(cmd.output().unwrap().status.success());
    };
    run(&out_a, false);
    run(&out_b, true);
    assert_eq!(
        fs::read(out_a.join("images/scene_00000_rgb.png")).unwrap(),
        fs::read(out_b.join("images/scene_00000_rgb.png")).unwrap()
    );
}
