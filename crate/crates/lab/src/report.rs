//! Serializable run configuration and reports.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    Conjecture1,
    EtaVanishing,
    LemmaSuite,
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub kind: ScanKind,
    pub n: u32,
    pub samples: usize,
    pub seed: u64,
    pub height: i64,
    /// Number of control pairs (D_2 scan only).
    #[serde(default)]
    pub controls: usize,
    /// Record wall-clock timings. Off by default so that reports replay exactly.
    #[serde(default)]
    pub timings: bool,
}

impl ScanConfig {
    pub fn new(kind: ScanKind, n: u32, samples: usize, seed: u64, height: i64) -> Self {
        ScanConfig { kind, n, samples, seed, height, controls: 0, timings: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.samples == 0 || self.height <= 0 {
            return Err(LabError::Config(format!(
                "n, samples and height must be positive (n={}, samples={}, height={})",
                self.n, self.samples, self.height
            )));
        }
        Ok(())
    }

    /// An independent generator for stream `stream`; the same `(seed, stream)`
    /// always yields the same draws, whatever order samples are processed in.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Skipped,
    HypothesisFailure,
    CounterexampleCandidate,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub factors: Vec<String>,
    pub map: String,
    /// Homogenization level.
    pub level: u32,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControlRecord {
    pub index: usize,
    pub f1: String,
    pub f2: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub lemma: String,
    pub n: u32,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub constant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: u32,
    pub n1: u32,
    pub n2: u32,
    pub nonzero: bool,
    /// The `V(2n-4, 2)` part is a multiple of `e2^(2n1-2) e1^(2n2-2) x3^2`.
    pub monomial_ok: bool,
    /// The whole value is that multiple times `(a1 + a2)^2 w3^(2n-2)`.
    pub tensor_ok: bool,
    pub scalar: String,
    /// `n1 n2 (1 - n1 - n2) / (n^2 (n-1)^2)`.
    pub formula: String,
    /// `scalar / formula`; must not depend on the split.
    pub ratio: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub factors: Vec<String>,
    pub map: String,
    pub f1: String,
    pub f2: String,
    pub covariant: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
    pub hypothesis_failures: usize,
    pub counterexample_candidates: usize,
    pub controls_passed: usize,
    pub controls_failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub records: Vec<SampleRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub controls: Vec<ControlRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lemmas: Vec<LemmaRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<WitnessRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub counterexamples: Vec<Counterexample>,
}

/// How a run ended, mapped onto process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    AllPass,
    CheckFailure,
    ConjectureViolation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::AllPass => 0,
            Outcome::CheckFailure => 2,
            Outcome::ConjectureViolation => 3,
        }
    }
}

impl ScanReport {
    pub fn new(config: ScanConfig) -> Self {
        ScanReport {
            config,
            records: Vec::new(),
            controls: Vec::new(),
            lemmas: Vec::new(),
            witnesses: Vec::new(),
            summary: Summary::default(),
            counterexamples: Vec::new(),
        }
    }

    pub fn push_record(&mut self, record: SampleRecord) {
        count(&mut self.summary, record.verdict);
        self.records.push(record);
    }

    pub fn push_control(&mut self, record: ControlRecord) {
        if record.verdict == Verdict::Pass {
            self.summary.controls_passed += 1;
        } else {
            self.summary.controls_failed += 1;
        }
        self.controls.push(record);
    }

    pub fn push_lemma(&mut self, record: LemmaRecord) {
        count(&mut self.summary, if record.passed { Verdict::Pass } else { Verdict::Fail });
        self.lemmas.push(record);
    }

    pub fn push_witness(&mut self, record: WitnessRecord, consistent: bool) {
        let ok = record.nonzero && record.monomial_ok && record.tensor_ok && consistent;
        count(&mut self.summary, if ok { Verdict::Pass } else { Verdict::Fail });
        self.witnesses.push(record);
    }

    pub fn outcome(&self) -> Outcome {
        let s = &self.summary;
        if s.counterexample_candidates > 0 {
            Outcome::ConjectureViolation
        } else if s.hypothesis_failures > 0 || s.failed > 0 || s.controls_failed > 0 {
            Outcome::CheckFailure
        } else {
            Outcome::AllPass
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

fn count(s: &mut Summary, v: Verdict) {
    match v {
        Verdict::Pass => s.passed += 1,
        Verdict::Skipped => s.skipped += 1,
        Verdict::Fail => s.failed += 1,
        Verdict::HypothesisFailure => s.hypothesis_failures += 1,
        Verdict::CounterexampleCandidate => s.counterexample_candidates += 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let c = ScanConfig::new(ScanKind::Conjecture1, 2, 1, 42, 3);
        let a: u64 = c.rng(0).gen();
        assert_eq!(a, c.rng(0).gen::<u64>());
        assert_ne!(a, c.rng(1).gen::<u64>());
    }

    #[test]
    fn outcome_priorities() {
        let mut r = ScanReport::new(ScanConfig::new(ScanKind::Conjecture1, 2, 1, 0, 1));
        assert_eq!(r.outcome(), Outcome::AllPass);
        r.summary.hypothesis_failures = 1;
        assert_eq!(r.outcome().exit_code(), 2);
        r.summary.counterexample_candidates = 1;
        assert_eq!(r.outcome().exit_code(), 3);
    }

    #[test]
    fn json_round_trip() {
        let mut r = ScanReport::new(ScanConfig::new(ScanKind::Witness, 3, 1, 9, 2));
        r.push_lemma(LemmaRecord {
            lemma: "x".into(),
            n: 3,
            cases: 1,
            passed: true,
            constant: Some("1/2".into()),
            witness: None,
        });
        let back: ScanReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
