//! Seeded scans over tame automorphisms: the `D_2` vanishing scan with its control
//! population, and the `eta~` vanishing scan.

use std::time::Instant;

use invariant_core::covariants::{d_i, eta_tilde, homogenize, jacobian_covariant, jc, x3};
use invariant_core::poly::{Poly, Var};
use invariant_core::random::line_products;
use invariant_core::MapPair;

use crate::error::{LabError, Result};
use crate::report::{ControlRecord, Counterexample, SampleRecord, ScanConfig, ScanKind, ScanReport, Verdict};
use crate::sampler::{sample_tame, TameComposition};

/// Offset separating control streams from sample streams.
const CONTROL_STREAM: u64 = 1 << 32;

/// Homogenization level for a sample: its degree, but at least 2 so that `D_2`
/// and `eta~` are defined.
pub fn level_for(t: &TameComposition) -> u32 {
    t.degree().max(2)
}

struct Timer(Option<Instant>);

impl Timer {
    fn start(enabled: bool) -> Self {
        Timer(enabled.then(Instant::now))
    }

    fn ms(&self) -> Option<u64> {
        self.0.map(|t| t.elapsed().as_millis() as u64)
    }
}

fn counterexample(index: usize, t: &TameComposition, f: &MapPair, covariant: &str, value: String) -> Counterexample {
    Counterexample {
        index,
        factors: t.describe(),
        map: t.map().to_string(),
        f1: f.f1().to_string(),
        f2: f.f2().to_string(),
        covariant: covariant.into(),
        value,
    }
}

/// Checks `J_c(x3, f) = 0` and then `D_2(x3, f) = 0` on seeded tame samples, and
/// `D_2 != 0` on products of lines with `n^2` distinct common zeros off `x3 = 0`.
pub fn conjecture1_scan(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let mut report = ScanReport::new(ScanConfig { kind: ScanKind::Conjecture1, ..config.clone() });
    for index in 0..config.samples {
        let timer = Timer::start(config.timings);
        let mut rng = config.rng(index as u64);
        let t = sample_tame(&mut rng, config.n, config.height)?;
        let level = level_for(&t);
        let f = homogenize(t.map(), level)?;
        let (verdict, detail) = if !jc(&x3(), &f)?.is_zero() {
            (Verdict::HypothesisFailure, Some("jc(x3, f) != 0 on a constant-jacobian sample".to_string()))
        } else {
            let d2 = d_i(&x3(), &f, 2)?;
            if d2.is_zero() {
                (Verdict::Pass, None)
            } else {
                log::error!("nonzero D_2 on tame sample {index}: {}", t.map());
                report.counterexamples.push(counterexample(index, &t, &f, "D2", d2.to_string()));
                (Verdict::CounterexampleCandidate, Some(format!("D2 = {d2}")))
            }
        };
        report.push_record(SampleRecord {
            index,
            factors: t.describe(),
            map: t.map().to_string(),
            level,
            verdict,
            detail,
            elapsed_ms: timer.ms(),
        });
    }
    for index in 0..config.controls {
        let mut rng = config.rng(CONTROL_STREAM + index as u64);
        let lp = line_products(&mut rng, config.n.max(2), config.height, 0);
        let d2 = d_i(&x3(), &lp.pair, 2)?;
        report.push_control(ControlRecord {
            index,
            f1: lp.pair.f1().to_string(),
            f2: lp.pair.f2().to_string(),
            verdict: if d2.is_zero() { Verdict::Fail } else { Verdict::Pass },
        });
    }
    Ok(report)
}

/// Verdict of the `eta~` vanishing statement on one pair: skipped unless
/// `J(x3, f) = c x3^(2n-2)` with `c != 0`.
pub fn eta_vanishing_check(f: &MapPair) -> Result<(Verdict, Option<String>)> {
    let n = f.n();
    if n < 2 {
        return Err(LabError::Config("eta~ needs n >= 2".into()));
    }
    let j = jacobian_covariant(&x3(), f)?;
    if j.is_zero() {
        return Ok((Verdict::Skipped, Some("J(x3, f) = 0".into())));
    }
    let power = Poly::monomial(&[(Var::X3, 2 * n - 2)]);
    if j.poly().ratio_to(&power).is_none() {
        return Ok((Verdict::Skipped, Some(format!("J(x3, f) = {j} is not c x3^{}", 2 * n - 2))));
    }
    let et = eta_tilde(&x3(), f)?;
    if et.is_zero() {
        Ok((Verdict::Pass, None))
    } else {
        Ok((Verdict::CounterexampleCandidate, Some(format!("eta~ = {}", et.poly()))))
    }
}

/// `eta~(x3, f) = 0` on seeded tame samples (all of which have `J = x3^(2n-2)`).
pub fn eta_vanishing_scan(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    if config.n < 2 {
        return Err(LabError::Config("eta-vanishing scan needs n >= 2".into()));
    }
    let mut report = ScanReport::new(ScanConfig { kind: ScanKind::EtaVanishing, ..config.clone() });
    for index in 0..config.samples {
        let timer = Timer::start(config.timings);
        let mut rng = config.rng(index as u64);
        let t = sample_tame(&mut rng, config.n, config.height)?;
        let level = level_for(&t);
        let f = homogenize(t.map(), level)?;
        let (mut verdict, detail) = eta_vanishing_check(&f)?;
        if verdict == Verdict::Skipped {
            // tame samples always satisfy the hypothesis
            verdict = Verdict::HypothesisFailure;
        }
        if verdict == Verdict::CounterexampleCandidate {
            log::error!("nonzero eta~ on tame sample {index}: {}", t.map());
            let value = detail.clone().unwrap_or_default();
            report.counterexamples.push(counterexample(index, &t, &f, "eta~", value));
        }
        report.push_record(SampleRecord {
            index,
            factors: t.describe(),
            map: t.map().to_string(),
            level,
            verdict,
            detail,
            elapsed_ms: timer.ms(),
        });
    }
    Ok(report)
}
