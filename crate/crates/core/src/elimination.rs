//! Sylvester resultants of binary forms and the quasiresultant `Q`.
//!
//! For ternary forms `f1, f2` of degree `n` and a line `h = u1 x1 + u2 x2 + u3 x3`,
//! restricting both forms to `h = 0` and taking the Sylvester resultant gives a
//! polynomial `r(u)` of degree `2n^2`. With the parametrization used here
//! `r(u) = u3^(n^2) * Q(u)`, and `Q` read with `u -> e` is the quasiresultant: a
//! form of degree `n^2` in the point variables whose evaluation at the
//! coefficients of `h` is the resultant `R(f1, f2, h)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{BigradedForm, MapPair};
use crate::linalg::{bareiss_det, bareiss_det_poly, det_rational, interpolation_matrix};
use crate::poly::{rat, Monomial, Poly, Rational, Substitution, Var, E, U, X};

/// Coefficients `[c_0, .., c_d]` of `g = sum_k c_k s^(d-k) t^k`, as polynomials in
/// the remaining variables.
pub fn binary_coefficients(g: &Poly, d: u32) -> Result<Vec<Poly>> {
    let mut out = vec![Poly::zero(); d as usize + 1];
    for (m, rest) in g.split_by(&[Var::S, Var::T]) {
        let (s, t) = (m.exponent(Var::S), m.exponent(Var::T));
        if s + t != d {
            return Err(Error::NotBinaryForm { degree: d, poly: g.to_string() });
        }
        out[t as usize] = rest;
    }
    Ok(out)
}

/// Sylvester matrix of two coefficient vectors (highest power of `s` first).
pub fn sylvester_matrix<T: Clone + Zero>(c1: &[T], c2: &[T]) -> Vec<Vec<T>> {
    let (d1, d2) = (c1.len() - 1, c2.len() - 1);
    let size = d1 + d2;
    let mut m = vec![vec![T::zero(); size]; size];
    for i in 0..d2 {
        for (j, c) in c1.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..d1 {
        for (j, c) in c2.iter().enumerate() {
            m[d2 + i][i + j] = c.clone();
        }
    }
    m
}

/// Resultant of binary forms `g1` (degree `d1`) and `g2` (degree `d2`) in `s, t`.
/// The degrees are nominal: vanishing leading coefficients are allowed. The
/// coefficients may involve other variables, in which case the result does too.
pub fn sylvester_resultant(g1: &Poly, d1: u32, g2: &Poly, d2: u32) -> Result<Poly> {
    let c1 = binary_coefficients(g1, d1)?;
    let c2 = binary_coefficients(g2, d2)?;
    let numeric: Option<(Vec<Rational>, Vec<Rational>)> = c1
        .iter()
        .map(|c| c.as_constant())
        .collect::<Option<Vec<_>>>()
        .zip(c2.iter().map(|c| c.as_constant()).collect::<Option<Vec<_>>>());
    if let Some((n1, n2)) = numeric {
        return Ok(Poly::constant(det_rational(&sylvester_matrix(&n1, &n2))));
    }
    Ok(bareiss_det_poly(sylvester_matrix(&c1, &c2)))
}

/// Which coefficient of `h` scales the line parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalingAxis {
    U1,
    U2,
    U3,
}

impl ScalingAxis {
    pub const ALL: [ScalingAxis; 3] = [ScalingAxis::U1, ScalingAxis::U2, ScalingAxis::U3];

    fn index(self) -> usize {
        match self {
            ScalingAxis::U1 => 0,
            ScalingAxis::U2 => 1,
            ScalingAxis::U3 => 2,
        }
    }
}

/// Images of `x1, x2, x3` parametrizing the line `h = 0`. For axis `k` (cyclic
/// indices `k, k+1, k+2`): `x_{k+1} = u_k s`, `x_{k+2} = u_k t`,
/// `x_k = -u_{k+1} s - u_{k+2} t`. The two spanning points have cross product `u_k * u`.
fn line_images<T, F>(axis: ScalingAxis, u: [T; 3], s: T, t: T, lin: F) -> [T; 3]
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Neg<Output = T> + std::ops::Sub<Output = T>,
    F: Fn(T, T) -> T,
{
    let k = axis.index();
    let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
    let mut out: [Option<T>; 3] = [None, None, None];
    out[k1] = Some(u[k].clone() * s.clone());
    out[k2] = Some(u[k].clone() * t.clone());
    out[k] = Some(lin(-(u[k1].clone() * s), u[k2].clone() * t));
    out.map(|x| x.unwrap())
}

/// `f` restricted to `h = 0` as a binary form in `s, t` with coefficients in
/// `u1, u2, u3`. For the default axis this is `f(u3 s, u3 t, -u1 s - u2 t)`.
pub fn restrict_to_line(f: &Poly, axis: ScalingAxis) -> Poly {
    let u = U.map(Poly::var);
    let images = line_images(axis, u, Poly::var(Var::S), Poly::var(Var::T), |a, b| a - b);
    let mut sub = Substitution::new();
    for (v, img) in X.iter().zip(images) {
        sub.insert(*v, img);
    }
    f.substitute(&sub)
}

/// `f` restricted to the line with numeric coefficients `u`.
pub fn restrict_to_numeric_line(f: &Poly, axis: ScalingAxis, u: &[Rational; 3]) -> Poly {
    let restricted = restrict_to_line(f, axis);
    restricted.eval(&[(U[0], u[0].clone()), (U[1], u[1].clone()), (U[2], u[2].clone())])
}

/// The quasiresultant: a form of degree `n^2` in `e1, e2, e3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QForm(BigradedForm);

impl QForm {
    pub fn form(&self) -> &BigradedForm {
        &self.0
    }

    pub fn poly(&self) -> &Poly {
        self.0.poly()
    }

    pub fn degree(&self) -> u32 {
        self.0.edeg()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `Q` at a point `u` (the pairing with `h^(n^2)` for `h = u . x`).
    pub fn eval(&self, u: &[Rational; 3]) -> Rational {
        self.poly()
            .eval(&[(E[0], u[0].clone()), (E[1], u[1].clone()), (E[2], u[2].clone())])
            .as_constant()
            .expect("Q is a pure point form")
    }
}

fn common_degree(f1: &BigradedForm, f2: &BigradedForm) -> Result<u32> {
    if f1.edeg() != 0 || f2.edeg() != 0 || f1.xdeg() != f2.xdeg() {
        return Err(Error::InvalidArgument(format!(
            "quasiresultant needs two coordinate forms of equal degree, got {:?} and {:?}",
            f1.bidegree(),
            f2.bidegree()
        )));
    }
    if f1.xdeg() == 0 {
        return Err(Error::InvalidArgument("quasiresultant needs n >= 1".into()));
    }
    if f1.poly().involves_any(&[Var::S, Var::T, Var::U1, Var::U2, Var::U3]) {
        return Err(Error::InvalidArgument("inputs must not involve s, t or u".into()));
    }
    Ok(f1.xdeg())
}

/// A ternary form with integer coefficients prepared for fast numeric restriction.
struct IntegerForm {
    n: u32,
    terms: Vec<([u32; 3], BigInt)>,
}

impl IntegerForm {
    fn new(f: &Poly, n: u32) -> Result<(Rational, IntegerForm)> {
        let (scale, prim) = f.clear_denominators();
        let mut terms = Vec::new();
        for (m, c) in prim.terms() {
            if m.degree() != m.degree_in(&X) {
                return Err(Error::InvalidArgument(format!(
                    "numeric quasiresultant needs rational coefficients, got {f}"
                )));
            }
            terms.push(([m.exponent(X[0]), m.exponent(X[1]), m.exponent(X[2])], c.to_integer()));
        }
        Ok((scale, IntegerForm { n, terms }))
    }

    /// Coefficients (in powers of `t`) of `f(s, t, -u1 s - u2 t)`.
    fn restrict(&self, u1: &BigInt, u2: &BigInt, binom: &[Vec<BigInt>]) -> Vec<BigInt> {
        let n = self.n as usize;
        let mut pow1 = vec![BigInt::one()];
        let mut pow2 = vec![BigInt::one()];
        let (m1, m2) = (-u1.clone(), -u2.clone());
        for k in 1..=n {
            pow1.push(&pow1[k - 1] * &m1);
            pow2.push(&pow2[k - 1] * &m2);
        }
        let mut out = vec![BigInt::zero(); n + 1];
        for ([_, b, c], coeff) in &self.terms {
            let (b, c) = (*b as usize, *c as usize);
            for j in 0..=c {
                out[b + j] += coeff * &binom[c][j] * &pow1[c - j] * &pow2[j];
            }
        }
        out
    }
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &t[i - 1][j - 1] + &t[i - 1][j];
        }
        t.push(row);
    }
    t
}

/// `r(u1, u2, 1)` for integer forms: the numeric Sylvester resultant.
fn resultant_at(f1: &IntegerForm, f2: &IntegerForm, u1: &BigInt, u2: &BigInt, binom: &[Vec<BigInt>]) -> BigInt {
    let c1 = f1.restrict(u1, u2, binom);
    let c2 = f2.restrict(u1, u2, binom);
    bareiss_det(sylvester_matrix(&c1, &c2))
}

/// Quasiresultant `Q(f1, f2)` of two forms of degree `n`.
///
/// `r(u1, u2, 1)` is sampled on an `(n^2+1) x (n^2+1)` integer grid and
/// interpolated exactly; `r(u)` is rebuilt as a form of degree `2n^2` and divided
/// by `u3^(n^2)`. A failing division, or a mismatch at two off-grid points, is
/// reported as an internal error.
pub fn quasiresultant(f1: &BigradedForm, f2: &BigradedForm) -> Result<QForm> {
    let n = common_degree(f1, f2)?;
    let d = (n * n) as usize;
    let (s1, i1) = IntegerForm::new(f1.poly(), n)?;
    let (s2, i2) = IntegerForm::new(f2.poly(), n)?;
    if i1.terms.is_empty() || i2.terms.is_empty() {
        return Ok(QForm(BigradedForm::zero(d as u32, 0)));
    }
    let binom = binomial_table(n as usize);
    let half = (d / 2) as i64;
    let nodes: Vec<BigInt> = (0..=d as i64).map(|k| BigInt::from(k - half)).collect();
    let rnodes: Vec<Rational> = nodes.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let (inv, denom) = interpolation_matrix(&rnodes);
    let apply = |values: &[BigInt]| -> Vec<BigInt> {
        inv.iter().map(|row| row.iter().zip(values).map(|(a, v)| a * v).sum()).collect()
    };

    // rows[j][k]: denom * (coefficient of u1^k in r(u1, nodes[j], 1))
    let rows: Vec<Vec<BigInt>> = nodes
        .iter()
        .map(|u2| {
            let values: Vec<BigInt> = nodes.iter().map(|u1| resultant_at(&i1, &i2, u1, u2, &binom)).collect();
            apply(&values)
        })
        .collect();
    let denom2 = Rational::from_integer(&denom * &denom);
    let mut r = Poly::zero();
    for k in 0..=d {
        let column: Vec<BigInt> = rows.iter().map(|row| row[k].clone()).collect();
        for (l, c) in apply(&column).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + l > d {
                return Err(Error::Internal(format!(
                    "resultant of the restrictions is not divisible by u3^{d}"
                )));
            }
            let m = Monomial::from_pairs(&[(Var::E1, k as u32), (Var::E2, l as u32), (Var::E3, (d - k - l) as u32)]);
            r.add_term(m, Rational::from_integer(c) / &denom2);
        }
    }
    let q = QForm(BigradedForm::new_unchecked(r, d as u32, 0));
    // The tensor grid only determines r if its degree bound holds; probe off the grid.
    for (a, b) in [(d as i64 + 3, -(d as i64) - 5), (-(2 * d as i64) - 1, d as i64 + 7)] {
        let direct = Rational::from_integer(resultant_at(&i1, &i2, &BigInt::from(a), &BigInt::from(b), &binom));
        if q.eval(&[rat(a), rat(b), rat(1)]) != direct {
            return Err(Error::Internal("interpolated quasiresultant fails an off-grid check".into()));
        }
    }
    let scale = num_traits::pow(s1 * s2, n as usize);
    Ok(QForm(q.0.scale(&scale)))
}

/// Quasiresultant computed symbolically: the Sylvester determinant is expanded over
/// `Q[u1, u2, u3]` and divided exactly by `u_k^(n^2)` for the chosen axis.
/// Independent of [`quasiresultant`]; practical for small `n`.
pub fn quasiresultant_symbolic(f1: &BigradedForm, f2: &BigradedForm, axis: ScalingAxis) -> Result<QForm> {
    let n = common_degree(f1, f2)?;
    let d = n * n;
    let g1 = restrict_to_line(f1.poly(), axis);
    let g2 = restrict_to_line(f2.poly(), axis);
    let r = sylvester_resultant(&g1, n, &g2, n)?;
    let scaling = Poly::monomial(&[(U[axis.index()], d)]);
    let q = r
        .div_exact(&scaling)
        .ok_or_else(|| Error::Internal(format!("resultant of the restrictions is not divisible by u^{d}")))?;
    let q = q.rename(&U, &E);
    Ok(QForm(BigradedForm::new(q, d, 0)?))
}

/// `f1 (x) a1 + f2 (x) a2 -> Q(f1, f2)`, homogeneous of degree `2n` in the pair.
pub fn pair_covariant(f: &MapPair) -> Result<QForm> {
    quasiresultant(f.f1(), f.f2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{p, ratio};

    fn coord(s: &str, n: u32) -> BigradedForm {
        BigradedForm::coord(p(s), n).unwrap()
    }

    #[test]
    fn two_by_two_resultant() {
        let r = sylvester_resultant(&p("u1*s + u2*t"), 1, &p("u3*s + z1*t"), 1).unwrap();
        assert_eq!(r, p("u1*z1 - u2*u3"));
        assert_eq!(sylvester_resultant(&p("s"), 1, &p("t"), 1).unwrap(), p("1"));
        let g = p("s^2 - 3*s*t + 2*t^2");
        assert!(sylvester_resultant(&g, 2, &g, 2).unwrap().is_zero());
    }

    #[test]
    fn nominal_degree_with_vanishing_leading_coefficient() {
        let r = sylvester_resultant(&p("t"), 1, &p("s^2 + t^2"), 2).unwrap();
        assert_eq!(r, p("1"));
    }

    #[test]
    fn restriction_examples() {
        let ax = ScalingAxis::U3;
        assert_eq!(restrict_to_line(&p("x3"), ax), p("-u1*s - u2*t"));
        assert_eq!(restrict_to_line(&p("x1"), ax), p("u3*s"));
        assert_eq!(
            restrict_to_line(&p("x1*x3 + x2^2"), ax),
            p("u3*s*(-u1*s - u2*t) + u3^2*t^2")
        );
    }

    #[test]
    fn restricted_point_lies_on_line() {
        let h = p("u1*x1 + u2*x2 + u3*x3");
        for ax in ScalingAxis::ALL {
            assert!(restrict_to_line(&h, ax).is_zero(), "{ax:?}");
        }
    }

    #[test]
    fn q_of_coordinate_lines() {
        let q = quasiresultant(&coord("x1", 1), &coord("x2", 1)).unwrap();
        assert!(q.poly().ratio_to(&p("e3")).is_some_and(|c| !c.is_zero()));
    }

    #[test]
    fn q_of_de_jonquieres_pair() {
        // common zeros (1:0:0) with multiplicity 3 and (0:0:1)
        let q = quasiresultant(&coord("x1*x3 + x2^2", 2), &coord("x2*x3", 2)).unwrap();
        assert!(q.poly().ratio_to(&p("e1^3*e3")).is_some_and(|c| !c.is_zero()), "{q:?}");
        let sym = quasiresultant_symbolic(&coord("x1*x3 + x2^2", 2), &coord("x2*x3", 2), ScalingAxis::U3).unwrap();
        assert_eq!(sym, q);
    }

    #[test]
    fn q_vanishes_on_shared_curve() {
        let f = coord("x1^2 - x2*x3 + 4*x3^2", 2);
        assert!(quasiresultant(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn axes_agree() {
        let (f1, f2) = (coord("x1^2 - 2*x2*x3 + x3^2", 2), coord("3*x1*x2 + x2^2 - x1*x3", 2));
        let base = quasiresultant_symbolic(&f1, &f2, ScalingAxis::U3).unwrap();
        for ax in [ScalingAxis::U1, ScalingAxis::U2] {
            assert_eq!(quasiresultant_symbolic(&f1, &f2, ax).unwrap(), base, "{ax:?}");
        }
        assert_eq!(quasiresultant(&f1, &f2).unwrap(), base);
    }

    #[test]
    fn rational_coefficients_rescale() {
        let (f1, f2) = (coord("1/2*x1 - x3", 1), coord("x2 + 2/3*x1", 1));
        let q = quasiresultant(&f1, &f2).unwrap();
        let sym = quasiresultant_symbolic(&f1, &f2, ScalingAxis::U3).unwrap();
        assert_eq!(q, sym);
        let _ = ratio(1, 2);
    }

    #[test]
    fn rejects_mismatched_degrees() {
        assert!(quasiresultant(&coord("x1", 1), &coord("x2^2", 2)).is_err());
    }
}
