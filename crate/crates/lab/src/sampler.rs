//! Random tame automorphisms of the affine plane.
//!
//! A composition is a list of factors applied left to right. Factor count is
//! uniform in `1..=4`, each factor is elementary with probability 1/2 and a swap
//! or a shear-built linear map with probability 1/4 each. Elementary factors
//! `(z1, z2) -> (z1 + p(z2), z2)` have `deg p` uniform in `1..=n` and integer
//! coefficients uniform in `[-H, H]`. A draw is rejected as soon as a prefix of the
//! composition exceeds degree `n`.

use std::fmt;

use invariant_core::covariants::{affine_jacobian, ChartedMap};
use invariant_core::poly::{rat, Poly, Var};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Factor {
    /// `(z1 + p(z2), z2)` with `p = sum_k coeffs[k] z2^k`.
    Elementary { coeffs: Vec<i64> },
    /// `(-z2, z1)`.
    Swap,
    /// `z -> M z` with `det M = 1`.
    Linear { m: [[i64; 2]; 2] },
}

impl Factor {
    pub fn map(&self) -> ChartedMap {
        let (z1, z2) = (Poly::var(Var::Z1), Poly::var(Var::Z2));
        let (f1, f2) = match self {
            Factor::Elementary { coeffs } => {
                let p: Poly = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| Poly::monomial(&[(Var::Z2, k as u32)]).scale(&rat(c)))
                    .sum();
                (z1 + p, z2)
            }
            Factor::Swap => (-z2, z1),
            Factor::Linear { m } => (
                z1.scale(&rat(m[0][0])) + z2.scale(&rat(m[0][1])),
                z1.scale(&rat(m[1][0])) + z2.scale(&rat(m[1][1])),
            ),
        };
        ChartedMap::new(f1, f2).expect("factors are maps in z")
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Elementary { .. } => {
                let m = self.map();
                write!(f, "elementary(z1 + {})", m.f1() - &Poly::var(Var::Z1))
            }
            Factor::Swap => write!(f, "swap"),
            Factor::Linear { m } => write!(f, "linear[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameComposition {
    factors: Vec<Factor>,
    map: ChartedMap,
    degree: u32,
}

impl TameComposition {
    pub fn identity() -> Self {
        TameComposition { factors: Vec::new(), map: ChartedMap::identity(), degree: 1 }
    }

    /// Composes the factors (first factor applied first) and checks the Jacobian.
    pub fn from_factors(factors: Vec<Factor>) -> Result<Self> {
        let mut map = ChartedMap::identity();
        for f in &factors {
            map = f.map().compose(&map);
        }
        let out = TameComposition { degree: map.degree(), factors, map };
        out.verify()?;
        Ok(out)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn map(&self) -> &ChartedMap {
        &self.map
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn describe(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.to_string()).collect()
    }

    fn verify(&self) -> Result<()> {
        let jac = affine_jacobian(&self.map);
        if jac != Poly::one() {
            return Err(LabError::UnsoundSample { map: self.map.to_string(), jacobian: jac.to_string() });
        }
        Ok(())
    }
}

pub const SAMPLING_BUDGET: usize = 10_000;

fn random_factor<R: Rng + ?Sized>(rng: &mut R, n: u32, height: i64) -> Factor {
    match rng.gen_range(0..4) {
        0 | 1 => {
            let d = rng.gen_range(1..=n) as usize;
            Factor::Elementary { coeffs: (0..=d).map(|_| rng.gen_range(-height..=height)).collect() }
        }
        2 => Factor::Swap,
        _ => {
            let (a, b) = (rng.gen_range(-height..=height), rng.gen_range(-height..=height));
            // [[1, a], [0, 1]] * [[1, 0], [b, 1]]
            Factor::Linear { m: [[1 + a * b, a], [b, 1]] }
        }
    }
}

/// Draws a tame automorphism of degree at most `n`.
pub fn sample_tame<R: Rng + ?Sized>(rng: &mut R, n: u32, height: i64) -> Result<TameComposition> {
    if n == 0 || height <= 0 {
        return Err(LabError::Config(format!("need n >= 1 and height >= 1, got n={n}, height={height}")));
    }
    'attempt: for _ in 0..SAMPLING_BUDGET {
        let count = rng.gen_range(1..=4);
        let mut factors = Vec::with_capacity(count);
        let mut map = ChartedMap::identity();
        for _ in 0..count {
            let f = random_factor(rng, n, height);
            map = f.map().compose(&map);
            factors.push(f);
            if map.degree() > n {
                continue 'attempt;
            }
        }
        let out = TameComposition { degree: map.degree(), factors, map };
        out.verify()?;
        return Ok(out);
    }
    Err(LabError::SamplingBudget { cap: n, attempts: SAMPLING_BUDGET })
}
