//! The witness value `gamma(x3, f0, x3^(2n-2))` for `f0 = x1^n1 x2^n2 (x) (a1 + a2)`.

use invariant_core::covariants::{eta_transvectant_route, folk_pair, gamma, x3, WitnessValue};
use invariant_core::poly::{rat, Monomial, Poly, Rational, Var};
use invariant_core::BigradedForm;
use num_traits::Zero;

use crate::error::{LabError, Result};
use crate::report::{ScanConfig, ScanKind, ScanReport, WitnessRecord};

/// `n1 n2 (1 - n1 - n2) / (n^2 (n-1)^2)` with `n = n1 + n2`.
pub fn closed_form_factor(n1: u32, n2: u32) -> Rational {
    let (a, b) = (n1 as i64, n2 as i64);
    let n = a + b;
    Rational::new((a * b * (1 - n)).into(), (n * n * (n - 1) * (n - 1)).into())
}

/// `e2^(2n1-2) e1^(2n2-2) x3^2`.
pub fn expected_monomial(n1: u32, n2: u32) -> Poly {
    Poly::monomial(&[(Var::E2, 2 * n1 - 2), (Var::E1, 2 * n2 - 2), (Var::X3, 2)])
}

fn check_split(n1: u32, n2: u32) -> Result<u32> {
    if n1 == 0 || n2 == 0 {
        return Err(LabError::Config(format!("need n1, n2 >= 1, got ({n1}, {n2})")));
    }
    Ok(n1 + n2)
}

/// Computes the witness at the split `(n1, n2)` and checks its shape.
pub fn conjecture2_witness(n1: u32, n2: u32) -> Result<(WitnessRecord, WitnessValue)> {
    let n = check_split(n1, n2)?;
    let f0 = folk_pair(n1, n2)?;
    let j = BigradedForm::coord(Poly::monomial(&[(Var::X3, 2 * n - 2)]), 2 * n - 2)?;
    let value = gamma(&x3(), &f0, &j)?;
    let m = expected_monomial(n1, n2);
    let components = value.components();
    let monomial_ok = !components.is_empty() && components.values().all(|c| c.ratio_to(&m).is_some());
    let w = Poly::monomial(&[(Var::W3, 2 * n - 2)]);
    let a_sq = Poly::var(Var::A1) + Poly::var(Var::A2);
    let tensor = &m * &(&a_sq * &a_sq) * w;
    let tensor_ok = value.value().ratio_to(&tensor).is_some_and(|c| !c.is_zero());
    let key = Monomial::from_pairs(&[(Var::A1, 2), (Var::W3, 2 * n - 2)]);
    let scalar = components.get(&key).and_then(|c| c.ratio_to(&m)).unwrap_or_else(Rational::zero);
    let formula = closed_form_factor(n1, n2);
    let ratio = &scalar / &formula;
    let record = WitnessRecord {
        n,
        n1,
        n2,
        nonzero: !value.is_zero(),
        monomial_ok,
        tensor_ok,
        scalar: scalar.to_string(),
        formula: formula.to_string(),
        ratio: ratio.to_string(),
        value: value.to_string(),
    };
    Ok((record, value))
}

/// Coefficient of `e2^(2n1-2) e1^(2n2-2) x3^2` in the transvectant route at `f0`.
pub fn transvectant_route_coefficient(n1: u32, n2: u32) -> Result<Rational> {
    let n = check_split(n1, n2)?;
    let m = BigradedForm::coord(Poly::monomial(&[(Var::X1, n1), (Var::X2, n2)]), n)?;
    let route = eta_transvectant_route(&m, &m)?;
    route
        .poly()
        .ratio_to(&expected_monomial(n1, n2))
        .ok_or_else(|| LabError::Config("transvectant route is not a monomial multiple".into()))
}

/// The proportionality constant between `eta(x3, m, m)` and the transvectant route
/// at `m = x1^n1 x2^n2`, read off the witness.
pub fn witness_eta_constant(n1: u32, n2: u32) -> Result<Rational> {
    let (record, _) = conjecture2_witness(n1, n2)?;
    let scalar: Rational = record.scalar.parse().map_err(|_| LabError::Config("bad scalar".into()))?;
    Ok(scalar / transvectant_route_coefficient(n1, n2)?)
}

/// All splits `n1 + n2 = n`; the split-independence of `scalar / formula` is part
/// of each record's verdict.
pub fn witness_scan(n: u32) -> Result<ScanReport> {
    if n < 2 {
        return Err(LabError::Config("witness needs n >= 2".into()));
    }
    let config = ScanConfig::new(ScanKind::Witness, n, (n - 1) as usize, 0, 1);
    let mut report = ScanReport::new(config);
    let records: Vec<WitnessRecord> =
        (1..n).map(|n1| conjecture2_witness(n1, n - n1).map(|(r, _)| r)).collect::<Result<_>>()?;
    let first = records[0].ratio.clone();
    let consistent = records.iter().all(|r| r.ratio == first && r.ratio != rat(0).to_string());
    for r in records {
        report.push_witness(r, consistent);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use invariant_core::poly::{p, ratio};

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_factor(1, 1), ratio(-1, 4));
        assert_eq!(closed_form_factor(1, 2), closed_form_factor(2, 1));
    }

    #[test]
    fn n2_witness() {
        let (r, v) = conjecture2_witness(1, 1).unwrap();
        assert!(r.nonzero && r.monomial_ok && r.tensor_ok);
        assert!(v.value().ratio_to(&p("x3^2*(a1 + a2)^2*w3^2")).is_some());
    }

    #[test]
    fn n4_monomial() {
        assert_eq!(expected_monomial(1, 3), p("e1^4*x3^2"));
        let (r, _) = conjecture2_witness(1, 3).unwrap();
        assert!(r.monomial_ok);
    }

    #[test]
    fn split_ratios_agree() {
        let r = witness_scan(3).unwrap();
        assert_eq!(r.summary.passed, 2);
        assert_eq!(r.witnesses[0].ratio, r.witnesses[1].ratio);
    }
}
