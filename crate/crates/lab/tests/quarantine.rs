use jacobian_lab::quarantine::quarantine;
use jacobian_lab::report::Counterexample;
use jacobian_lab::{Outcome, ScanConfig, ScanKind, ScanReport};

#[test]
fn candidates_are_appended_as_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.jsonl");
    let mut report = ScanReport::new(ScanConfig::new(ScanKind::Conjecture1, 3, 1, 17, 2));
    assert_eq!(quarantine(&path, &report).unwrap(), 0);
    assert!(!path.exists());
    report.counterexamples.push(Counterexample {
        index: 0,
        factors: vec!["elementary".into()],
        map: "(z1, z2)".into(),
        f1: "x1".into(),
        f2: "x2".into(),
        covariant: "D2".into(),
        value: "e3^2".into(),
    });
    report.summary.counterexample_candidates = 1;
    assert_eq!(report.outcome(), Outcome::ConjectureViolation);
    quarantine(&path, &report).unwrap();
    quarantine(&path, &report).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["config"]["seed"], 17);
    assert_eq!(lines[1]["counterexample"]["value"], "e3^2");
}
