//! End-to-end checks of the `csop` binary: eval, verify filters,
//! catalog, and the normalized-dump round-trip.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_csop"))
}

fn write_problem(contents: &str) -> tempfile_path::TempPath {
    tempfile_path::write(contents)
}

mod tempfile_path {
    use super::*;

    pub struct TempPath(pub std::path::PathBuf);

    impl Drop for TempPath {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }

    pub fn write(contents: &str) -> TempPath {
        let mut path = std::env::temp_dir();
        let unique = format!(
            "csop-cli-{}-{:x}.json",
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .unwrap()
                .as_nanos()
        );
        path.push(unique);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        TempPath(path)
    }
}

const EX42_FC: &str = r#"{
  "n": 2, "f": [0.5, 1.0],
  "mu": {"n": 2, "values": {"{}": 0.0, "{1}": 0.5, "{2}": 0.4, "{1,2}": 1.0}},
  "operator": {"id": "fc", "op": {"op": "min"}}
}"#;

#[test]
fn eval_prints_value_and_exits_zero() {
    let p = write_problem(EX42_FC);
    let out = bin().arg("eval").arg(&p.0).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("value: 0.9"), "stdout: {stdout}");
}

#[test]
fn eval_json_output() {
    let p = write_problem(EX42_FC);
    let out = bin().arg("--json").arg("eval").arg(&p.0).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.9).abs() < 1e-12);
}

#[test]
fn eval_rejects_malformed_input() {
    let p = write_problem("{\"n\": 2}");
    let out = bin().arg("eval").arg(&p.0).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("error"), "stderr: {stderr}");
}

#[test]
fn dump_normalized_round_trips() {
    let p = write_problem(EX42_FC);
    let out = bin()
        .arg("eval")
        .arg(&p.0)
        .arg("--dump-normalized")
        .output()
        .unwrap();
    assert!(out.status.success());
    let normalized = String::from_utf8(out.stdout).unwrap();
    let p2 = write_problem(&normalized);
    let out2 = bin().arg("--json").arg("eval").arg(&p2.0).output().unwrap();
    assert!(out2.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.9).abs() < 1e-12);
}

#[test]
fn verify_law_filter_and_exit_codes() {
    let out = bin().arg("verify").arg("--law").arg("ex3_5").output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("ex3_5"));

    // no entry matches → error exit
    let out = bin().arg("verify").arg("--law").arg("no-such-law").output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn verify_json_reports_expected_verdicts() {
    let out = bin()
        .args(["--json", "verify", "--law", "thm4_3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["matched"], serde_json::Value::Bool(true));
    }
}

#[test]
fn catalog_lists_anchored_ids() {
    let out = bin().arg("catalog").output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    for needle in ["choquet (Eqs. 1-4)", "cs (Def. 3.2)", "ie (Eq. ie:n1)"] {
        assert!(stdout.contains(needle), "missing {needle}");
    }
}
