use std::process::{Command, Output};

fn jaclab(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jaclab")).args(args).current_dir(dir).output().expect("run jaclab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn covariant_eval_prints_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = jaclab(&["covariant", "eval", "j", "--f1", "x1*x3 + x2^2", "--f2", "x2*x3"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x3^2");
    let o = jaclab(&["covariant", "eval", "q", "--f1", "x1", "--f2", "x2"], dir.path());
    assert_eq!(stdout(&o), "e3");
    let o = jaclab(&["covariant", "eval", "affine-jacobian", "--f1", "z1 + z2^2", "--f2", "z2"], dir.path());
    assert_eq!(stdout(&o), "1");
    let o = jaclab(&["covariant", "eval", "psi", "--f", "y1^2", "--g", "y2^2", "--i", "2"], dir.path());
    assert_eq!(stdout(&o), "1");
}

#[test]
fn usage_and_input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(jaclab(&["bogus"], dir.path()).status.code(), Some(1));
    assert_eq!(jaclab(&["covariant", "eval", "q", "--f1", "x1 +", "--f2", "x2"], dir.path()).status.code(), Some(1));
    assert_eq!(jaclab(&["covariant", "eval", "d", "--f1", "x1", "--f2", "x2"], dir.path()).status.code(), Some(1));
    assert_eq!(jaclab(&["scan", "conjecture1", "--samples", "0"], dir.path()).status.code(), Some(1));
    assert_eq!(jaclab(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn scans_write_reproducible_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["scan", "conjecture1", "--n", "3", "--samples", "6", "--seed", "5", "--out"];
    let a = jaclab(&[&args[..], &["a.json"]].concat(), dir.path());
    let b = jaclab(&[&args[..], &["b.json"]].concat(), dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let ra = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(ra, std::fs::read(dir.path().join("b.json")).unwrap());
    let report: serde_json::Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(report["summary"]["passed"], 6);
    assert_eq!(report["summary"]["controls_passed"], 6);
    assert!(!dir.path().join("jaclab-quarantine.jsonl").exists());
}

#[test]
fn eta_scan_and_witness_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = jaclab(&["scan", "eta-vanishing", "--n", "2", "--samples", "5"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["config"]["kind"], "eta-vanishing");
    assert_eq!(jaclab(&["witness", "--n", "4"], dir.path()).status.code(), Some(0));
}

#[test]
fn mutated_lemmas_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let ok = jaclab(&["lemmas", "--n", "2", "--samples", "4"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    let bad = jaclab(&["lemmas", "--n", "2", "--samples", "4", "--mutate-rho", "2", "--out", "l.json"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("l.json")).unwrap()).unwrap();
    let lemmas = report["lemmas"].as_array().unwrap();
    let eta = lemmas.iter().find(|l| l["lemma"] == "eta-proportionality").unwrap();
    assert_eq!(eta["passed"], false);
    assert_eq!(jaclab(&["lemmas", "--mutate-rho", "6"], dir.path()).status.code(), Some(1));
}
