//! Jacobian covariants of `G = SL3 x SL2` on pairs of ternary forms, affine charts,
//! and torus-weight bookkeeping.

use std::fmt;

use num_traits::{One, Zero};

use crate::elimination::{pair_covariant, QForm};
use crate::error::{Error, Result};
use crate::forms::{BigradedForm, MapPair};
use crate::group::{det3, torus_act, GroupElement, Laurent, Mat3, TORUS_WEIGHTS};
use crate::poly::{Monomial, Poly, Rational, Substitution, Var, A, W, X, Z};
use crate::sl2::transvectant;
use crate::sl3::{delta, rho_with, tau_with, Epsilon, HarmonicForm};
use crate::forms::BinaryForm;

/// Coefficients of a linear coordinate form.
pub fn linear_coefficients(h: &BigradedForm) -> Result<[Rational; 3]> {
    if h.bidegree() != (0, 1) || h.poly().involves_any(&non_coordinate_vars()) {
        return Err(Error::InvalidArgument(format!("expected a linear form in x, got {h}")));
    }
    Ok(X.map(|v| h.poly().coeff(&Monomial::var(v))))
}

fn non_coordinate_vars() -> Vec<Var> {
    Var::ALL.iter().copied().filter(|v| !X.contains(v)).collect()
}

fn nonzero_linear(h: &BigradedForm) -> Result<[Rational; 3]> {
    let u = linear_coefficients(h)?;
    if u.iter().all(Zero::is_zero) {
        return Err(Error::ZeroLinearForm);
    }
    Ok(u)
}

/// `x3` as a linear form.
pub fn x3() -> BigradedForm {
    BigradedForm::coord(Poly::var(Var::X3), 1).expect("x3 is linear")
}

/// `J(h, f) = det [grad f1; grad f2; grad h]`, a form of degree `2n-2`.
pub fn jacobian_covariant(h: &BigradedForm, f: &MapPair) -> Result<BigradedForm> {
    let u = linear_coefficients(h)?;
    let g1: Vec<Poly> = X.iter().map(|&v| f.f1().poly().derivative(v)).collect();
    let g2: Vec<Poly> = X.iter().map(|&v| f.f2().poly().derivative(v)).collect();
    let mut j = Poly::zero();
    for k in 0..3 {
        if u[k].is_zero() {
            continue;
        }
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        let minor = &g1[a] * &g2[b] - &g1[b] * &g2[a];
        j += minor.scale(&u[k]);
    }
    Ok(BigradedForm::new_unchecked(j, 0, 2 * f.n() - 2))
}

/// `J_c(h, f) = rho_1(h, J(h, f))` in `V(1, 2n-3)`; for `n = 1` the zero form.
pub fn jc(h: &BigradedForm, f: &MapPair) -> Result<HarmonicForm> {
    let j = jacobian_covariant(h, f)?;
    if j.xdeg() == 0 {
        return HarmonicForm::new(BigradedForm::zero(1, 0));
    }
    rho_with(&HarmonicForm::new(h.clone())?, &HarmonicForm::new(j)?, 1, &Epsilon::levi_civita())
}

/// `D_i(h, f) = Delta^i(h^i Q(f1, f2))`, a form of degree `n^2 - i` in `e`.
pub fn d_i(h: &BigradedForm, f: &MapPair, i: u32) -> Result<BigradedForm> {
    linear_coefficients(h)?;
    let max = f.n() * f.n();
    if i > max {
        return Err(Error::OrderOutOfRange { i, max });
    }
    let q = pair_covariant(f)?;
    Ok(d_i_from_q(h, &q, i))
}

/// `Delta^i(h^i Q)` for a precomputed `Q`.
pub fn d_i_from_q(h: &BigradedForm, q: &QForm, i: u32) -> BigradedForm {
    let mut p = h.pow(i).mul(q.form());
    for _ in 0..i {
        p = delta(&p);
    }
    p
}

fn require_n_at_least_2(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("needs n >= 2, got {n}")));
    }
    Ok(())
}

/// `eta(h, f1, f2) = tau_2(rho_n(h^n, f1), rho_n(h^n, f2))` in `V(2n-4, 2)`.
pub fn eta(h: &BigradedForm, f1: &BigradedForm, f2: &BigradedForm) -> Result<HarmonicForm> {
    eta_with(h, f1, f2, &Epsilon::levi_civita())
}

pub fn eta_with(h: &BigradedForm, f1: &BigradedForm, f2: &BigradedForm, eps: &Epsilon) -> Result<HarmonicForm> {
    linear_coefficients(h)?;
    let n = f1.xdeg();
    if f1.bidegree() != (0, n) || f2.bidegree() != (0, n) {
        return Err(Error::InvalidArgument("eta needs two coordinate forms of equal degree".into()));
    }
    require_n_at_least_2(n)?;
    let hn = HarmonicForm::new(h.pow(n))?;
    let r1 = rho_with(&hn, &HarmonicForm::new(f1.clone())?, n, eps)?;
    let r2 = rho_with(&hn, &HarmonicForm::new(f2.clone())?, n, eps)?;
    tau_with(&r1, &r2, 2, eps)
}

/// `f(x1, x2, 0)` read as a binary form in `y1, y2`.
pub fn restrict_to_infinity(f: &BigradedForm) -> Result<BinaryForm> {
    let sub = Substitution::new()
        .set(Var::X1, Poly::var(Var::Y1))
        .set(Var::X2, Poly::var(Var::Y2))
        .set(Var::X3, Poly::zero());
    BinaryForm::new(f.poly().substitute(&sub), f.xdeg())
}

/// The transvectant side of the `eta` proportionality at `h = x3`:
/// `psi_2(f1(y, 0), f2(y, 0))` with `y1 -> e2, y2 -> -e1`, times `x3^2`.
pub fn eta_transvectant_route(f1: &BigradedForm, f2: &BigradedForm) -> Result<BigradedForm> {
    let n = f1.xdeg();
    require_n_at_least_2(n)?;
    let psi = transvectant(&restrict_to_infinity(f1)?, &restrict_to_infinity(f2)?, 2)?;
    let sub = Substitution::new()
        .set(Var::Y1, Poly::var(Var::E2))
        .set(Var::Y2, -Poly::var(Var::E1));
    let p = psi.poly().substitute(&sub) * Poly::monomial(&[(Var::X3, 2)]);
    BigradedForm::new(p, 2 * n - 4, 2)
}

/// `eta~(h, f) = eta(h,f1,f1) a1^2 + 2 eta(h,f1,f2) a1 a2 + eta(h,f2,f2) a2^2`.
pub fn eta_tilde(h: &BigradedForm, f: &MapPair) -> Result<HarmonicForm> {
    eta_tilde_with(h, f, &Epsilon::levi_civita())
}

pub fn eta_tilde_with(h: &BigradedForm, f: &MapPair, eps: &Epsilon) -> Result<HarmonicForm> {
    let e11 = eta_with(h, f.f1(), f.f1(), eps)?;
    let e12 = eta_with(h, f.f1(), f.f2(), eps)?;
    let e22 = eta_with(h, f.f2(), f.f2(), eps)?;
    let a11 = Poly::monomial(&[(Var::A1, 2)]);
    let a12 = Poly::monomial(&[(Var::A1, 1), (Var::A2, 1)]).scale(&Rational::from_integer(2.into()));
    let a22 = Poly::monomial(&[(Var::A2, 2)]);
    let p = e11.poly() * &a11 + e12.poly() * &a12 + e22.poly() * &a22;
    HarmonicForm::new(BigradedForm::new_unchecked(p, e11.bidegree().0, 2))
}

/// A value of `gamma`: `eta~(h, f) (x) j`, with the factor `j` written in the second
/// coordinate block `w`. Degrees: `2n-4` in `e`, 2 in `x`, 2 in `a`, `2n-2` in `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessValue {
    value: Poly,
    n: u32,
}

impl WitnessValue {
    pub fn value(&self) -> &Poly {
        &self.value
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Components keyed by the monomial in `a` and `w`; each is a form in `V(2n-4, 2)`.
    pub fn components(&self) -> std::collections::BTreeMap<Monomial, Poly> {
        let block: Vec<Var> = A.iter().chain(W.iter()).copied().collect();
        self.value.split_by(&block)
    }
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// `gamma(h, f, j) = eta~(h, f) (x) j` for `j` of degree `2n-2`.
pub fn gamma(h: &BigradedForm, f: &MapPair, j: &BigradedForm) -> Result<WitnessValue> {
    gamma_with(h, f, j, &Epsilon::levi_civita())
}

pub fn gamma_with(h: &BigradedForm, f: &MapPair, j: &BigradedForm, eps: &Epsilon) -> Result<WitnessValue> {
    let n = f.n();
    require_n_at_least_2(n)?;
    if j.bidegree() != (0, 2 * n - 2) {
        return Err(Error::InvalidArgument(format!(
            "gamma needs j of degree {}, got bidegree {:?}",
            2 * n - 2,
            j.bidegree()
        )));
    }
    let et = eta_tilde_with(h, f, eps)?;
    Ok(WitnessValue { value: et.poly() * &j.poly().rename(&X, &W), n })
}

/// A polynomial map of the affine plane, `z -> (F1(z), F2(z))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChartedMap {
    f1: Poly,
    f2: Poly,
}

impl ChartedMap {
    pub fn new(f1: Poly, f2: Poly) -> Result<Self> {
        let others: Vec<Var> = Var::ALL.iter().copied().filter(|v| !Z.contains(v)).collect();
        for f in [&f1, &f2] {
            if f.involves_any(&others) {
                return Err(Error::InvalidArgument(format!("charted map must be in z1, z2, got {f}")));
            }
        }
        Ok(ChartedMap { f1, f2 })
    }

    pub fn identity() -> Self {
        ChartedMap { f1: Poly::var(Var::Z1), f2: Poly::var(Var::Z2) }
    }

    pub fn f1(&self) -> &Poly {
        &self.f1
    }

    pub fn f2(&self) -> &Poly {
        &self.f2
    }

    pub fn degree(&self) -> u32 {
        self.f1.max_degree_in(&Z).max(self.f2.max_degree_in(&Z))
    }

    /// `self o other`: `z -> self(other(z))`.
    pub fn compose(&self, other: &ChartedMap) -> ChartedMap {
        let sub = Substitution::new().set(Var::Z1, other.f1.clone()).set(Var::Z2, other.f2.clone());
        ChartedMap { f1: self.f1.substitute(&sub), f2: self.f2.substitute(&sub) }
    }
}

impl fmt::Display for ChartedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

/// A determinant-one change of coordinates carrying `h` to `x3`: its third row is
/// the coefficient vector of `h`, the others are unit vectors, the first rescaled.
pub fn chart_element(h: &BigradedForm) -> Result<GroupElement> {
    let u = nonzero_linear(h)?;
    let k = (0..3).rev().find(|&k| !u[k].is_zero()).expect("h is nonzero");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let unit = |i: usize| -> [Rational; 3] {
        std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
    };
    let mut m: Mat3 = [unit(others[0]), unit(others[1]), u.clone()];
    let d = det3(&m);
    m[0] = m[0].clone().map(|c| c / &d);
    GroupElement::sl3(m)
}

/// `I_h(f) = f / h^n` read in the chart `h = 1`. For `h = x3` this is
/// `(f1(z1, z2, 1), f2(z1, z2, 1))`; other `h` are first carried to `x3` by
/// [`chart_element`].
pub fn dehomogenize(h: &BigradedForm, f: &MapPair) -> Result<ChartedMap> {
    let g = chart_element(h)?;
    let sub = Substitution::new()
        .set(Var::X1, Poly::var(Var::Z1))
        .set(Var::X2, Poly::var(Var::Z2))
        .set(Var::X3, Poly::one());
    let f1 = g.act(f.f1().poly()).substitute(&sub);
    let f2 = g.act(f.f2().poly()).substitute(&sub);
    ChartedMap::new(f1, f2)
}

/// `x3^n F(x1/x3, x2/x3)` componentwise.
pub fn homogenize(map: &ChartedMap, n: u32) -> Result<MapPair> {
    let degree = map.degree();
    if degree > n {
        return Err(Error::DegreeExceeds { degree, cap: n });
    }
    let lift = |f: &Poly| -> Poly {
        Poly::from_terms(f.terms().map(|(m, c)| {
            let (a, b) = (m.exponent(Var::Z1), m.exponent(Var::Z2));
            (Monomial::from_pairs(&[(Var::X1, a), (Var::X2, b), (Var::X3, n - a - b)]), c.clone())
        }))
    };
    MapPair::new(lift(&map.f1), lift(&map.f2), n)
}

/// `dF1/dz1 dF2/dz2 - dF1/dz2 dF2/dz1`.
pub fn affine_jacobian(map: &ChartedMap) -> Poly {
    let (z1, z2) = (Var::Z1, Var::Z2);
    map.f1.derivative(z1) * map.f2.derivative(z2) - map.f1.derivative(z2) * map.f2.derivative(z1)
}

/// `N = 2 d1 - n d2 + 2(2n-2) d3` for a covariant of polydegree `(d1, d2, d3)` in
/// `(h, f, j)`.
pub fn torus_weight(d: [u32; 3], n: u32) -> i64 {
    let (d1, d2, d3, n) = (d[0] as i64, d[1] as i64, d[2] as i64, n as i64);
    2 * d1 - n * d2 + 2 * (2 * n - 2) * d3
}

/// Polydegree of `gamma` in `(h, f, j)`.
pub fn gamma_polydegree(n: u32) -> [u32; 3] {
    [2 * n, 2, 1]
}

/// `t^N g(t) . gamma(x3, f, x3^(2n-2))` as a Laurent polynomial in `t`, where
/// `g(t) = diag(t^-1, t^-1, t^2)` and `N` is the torus weight of `gamma`.
pub fn torus_rescaled_gamma(f: &MapPair) -> Result<Laurent> {
    let n = f.n();
    require_n_at_least_2(n)?;
    let j = BigradedForm::coord(Poly::monomial(&[(Var::X3, 2 * n - 2)]), 2 * n - 2)?;
    let value = gamma(&x3(), f, &j)?;
    let shift = torus_weight(gamma_polydegree(n), n) as i32;
    Ok(torus_act(value.value(), TORUS_WEIGHTS, shift))
}

/// `f0 = x1^n1 x2^n2 (x) (a1 + a2)`.
pub fn folk_pair(n1: u32, n2: u32) -> Result<MapPair> {
    let m = Poly::monomial(&[(Var::X1, n1), (Var::X2, n2)]);
    MapPair::new(m.clone(), m, n1 + n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::laurent_in_inverse;
    use crate::poly::{p, rat};

    fn pair(f1: &str, f2: &str, n: u32) -> MapPair {
        MapPair::new(p(f1), p(f2), n).unwrap()
    }

    fn lin(s: &str) -> BigradedForm {
        BigradedForm::coord(p(s), 1).unwrap()
    }

    fn dj2() -> MapPair {
        pair("x1*x3 + x2^2", "x2*x3", 2)
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_covariant(&x3(), &pair("x1", "x2", 1)).unwrap().poly(), &p("1"));
        let j = jacobian_covariant(&x3(), &dj2()).unwrap();
        assert_eq!(j.poly(), &p("x3^2"));
        assert_eq!(j.bidegree(), (0, 2));
    }

    #[test]
    fn jacobian_is_bilinear_in_h() {
        let f = pair("x1^2 - x2*x3", "x1*x2 + 3*x3^2", 2);
        let sum = jacobian_covariant(&lin("x1 + 2*x3"), &f).unwrap();
        let parts = jacobian_covariant(&lin("x1"), &f).unwrap().poly()
            + &jacobian_covariant(&lin("x3"), &f).unwrap().poly().scale(&rat(2));
        assert_eq!(sum.poly(), &parts);
    }

    #[test]
    fn jc_examples() {
        assert!(jc(&x3(), &dj2()).unwrap().is_zero());
        assert!(jc(&x3(), &pair("x1", "x2", 1)).unwrap().is_zero());
        let bad = pair("x1^2 + x2*x3", "x2^2 - x1*x3", 2);
        assert!(!jc(&x3(), &bad).unwrap().is_zero());
    }

    #[test]
    fn d_i_examples() {
        let f = dj2();
        let q = pair_covariant(&f).unwrap();
        assert_eq!(d_i(&x3(), &f, 0).unwrap(), q.form().clone());
        let d1 = d_i(&x3(), &f, 1).unwrap();
        assert!(d1.poly().ratio_to(&p("e1^3")).is_some_and(|c| !c.is_zero()));
        assert!(d_i(&x3(), &f, 2).unwrap().is_zero());
        assert_eq!(d_i(&x3(), &f, 5).unwrap_err(), Error::OrderOutOfRange { i: 5, max: 4 });
    }

    #[test]
    fn eta_vanishes_when_restriction_does() {
        let f = BigradedForm::coord(p("x1*x3 + x3^2"), 2).unwrap();
        assert!(eta(&x3(), &f, &f).unwrap().is_zero());
    }

    #[test]
    fn eta_on_monomials() {
        // n = 3, (n1, n2) = (1, 2): proportional to e2^0 e1^2 x3^2
        let m = BigradedForm::coord(p("x1*x2^2"), 3).unwrap();
        let e = eta(&x3(), &m, &m).unwrap();
        assert_eq!(e.bidegree(), (2, 2));
        assert!(e.poly().ratio_to(&p("e1^2*x3^2")).is_some_and(|c| !c.is_zero()), "{e:?}");
        let route = eta_transvectant_route(&m, &m).unwrap();
        assert!(e.poly().ratio_to(route.poly()).is_some());
    }

    #[test]
    fn eta_tilde_of_folk_pair() {
        let f0 = folk_pair(1, 1).unwrap();
        let et = eta_tilde(&x3(), &f0).unwrap();
        assert!(et.poly().ratio_to(&p("x3^2*(a1^2 + 2*a1*a2 + a2^2)")).is_some_and(|c| !c.is_zero()));
    }

    #[test]
    fn eta_tilde_vanishes_on_de_jonquieres() {
        assert!(eta_tilde(&x3(), &dj2()).unwrap().is_zero());
    }

    #[test]
    fn eta_tilde_swap_symmetry() {
        let f = pair("x1^2 - x2*x3", "x1*x2 + x2^2", 2);
        let swapped = pair("x1*x2 + x2^2", "x1^2 - x2*x3", 2);
        let lhs = eta_tilde(&x3(), &f).unwrap().poly().rename(&[Var::A1, Var::A2], &[Var::A2, Var::A1]);
        assert_eq!(&lhs, eta_tilde(&x3(), &swapped).unwrap().poly());
    }

    #[test]
    fn gamma_examples() {
        let f0 = folk_pair(1, 1).unwrap();
        let j = BigradedForm::coord(p("x3^2"), 2).unwrap();
        assert!(!gamma(&x3(), &f0, &j).unwrap().is_zero());
        let f = dj2();
        let jf = jacobian_covariant(&x3(), &f).unwrap();
        assert!(gamma(&x3(), &f, &jf).unwrap().is_zero());
        assert!(gamma(&x3(), &f0, &BigradedForm::zero(0, 2)).unwrap().is_zero());
    }

    #[test]
    fn chart_examples() {
        let d = dehomogenize(&x3(), &dj2()).unwrap();
        assert_eq!(d, ChartedMap::new(p("z1 + z2^2"), p("z2")).unwrap());
        assert_eq!(dehomogenize(&x3(), &pair("x1", "x2", 1)).unwrap(), ChartedMap::identity());
        assert_eq!(homogenize(&d, 2).unwrap(), dj2());
        assert_eq!(homogenize(&ChartedMap::identity(), 1).unwrap(), pair("x1", "x2", 1));
        assert_eq!(
            homogenize(&ChartedMap::new(p("z1*z2^2"), p("z1*z2^2")).unwrap(), 3).unwrap(),
            folk_pair(1, 2).unwrap()
        );
        assert_eq!(
            homogenize(&d, 1).unwrap_err(),
            Error::DegreeExceeds { degree: 2, cap: 1 }
        );
        assert_eq!(dehomogenize(&BigradedForm::zero(0, 1), &dj2()).unwrap_err(), Error::ZeroLinearForm);
    }

    #[test]
    fn chart_element_sends_h_to_x3() {
        for h in ["x3", "2*x1 - x2 + 3*x3", "1/2*x2", "x1"] {
            let h = lin(h);
            let g = chart_element(&h).unwrap();
            assert_eq!(g.act(h.poly()), p("x3"), "{h}");
        }
    }

    #[test]
    fn affine_jacobian_examples() {
        assert_eq!(affine_jacobian(&ChartedMap::identity()), p("1"));
        assert_eq!(affine_jacobian(&ChartedMap::new(p("z1 + z2^2"), p("z2")).unwrap()), p("1"));
        assert_eq!(affine_jacobian(&ChartedMap::new(p("z1*z2"), p("z2")).unwrap()), p("z2"));
    }

    #[test]
    fn torus_weight_examples() {
        assert_eq!(torus_weight(gamma_polydegree(2), 2), 8);
        assert_eq!(torus_weight([0, 0, 0], 5), 0);
        assert_eq!(torus_weight([1, 0, 0], 3), 2);
    }

    #[test]
    fn torus_limit_recovers_folk_witness() {
        let f0 = folk_pair(1, 1).unwrap();
        let f = MapPair::new(f0.f1().poly() + &p("x1*x3 - x3^2"), f0.f2().poly() + &p("x2*x3"), 2).unwrap();
        let l = torus_rescaled_gamma(&f).unwrap();
        let poly = laurent_in_inverse(&l).expect("no positive powers of t");
        let j = BigradedForm::coord(p("x3^2"), 2).unwrap();
        let limit = gamma(&x3(), &f0, &j).unwrap();
        assert_eq!(poly.eval(&[(Var::Tinv, rat(0))]), *limit.value());
    }
}
