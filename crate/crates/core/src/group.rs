//! Elements of `G = SL3 x SL2` and their action on polynomials.
//!
//! Convention: point variables (`e`, `v`, `a`) transform by the matrix,
//! `e_j -> sum_i A[i][j] e_i`; coordinate variables (`x`, `w`, `y`) transform by the
//! inverse transpose, `x_j -> sum_k inv(A)[j][k] x_k`, i.e. `(g.f)(v) = f(g^-1 v)`.
//! With this choice `e1*x1 + e2*x2 + e3*x3` is invariant.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{BigradedForm, BinaryForm, MapPair};
use crate::poly::{rat, Poly, Rational, Substitution, Var, A, E, V, W, X, Y};

pub type Mat3 = [[Rational; 3]; 3];
pub type Mat2 = [[Rational; 2]; 2];

pub fn det3(m: &Mat3) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub fn det2(m: &Mat2) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn inv3(m: &Mat3) -> Mat3 {
    let d = det3(m);
    let c = |r0: usize, c0: usize, r1: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
    let adj = [
        [c(1, 1, 2, 2), -c(0, 1, 2, 2), c(0, 1, 1, 2)],
        [-c(1, 0, 2, 2), c(0, 0, 2, 2), -c(0, 0, 1, 2)],
        [c(1, 0, 2, 1), -c(0, 0, 2, 1), c(0, 0, 1, 1)],
    ];
    adj.map(|row| row.map(|x| x / &d))
}

fn inv2(m: &Mat2) -> Mat2 {
    let d = det2(m);
    [
        [&m[1][1] / &d, -&m[0][1] / &d],
        [-&m[1][0] / &d, &m[0][0] / &d],
    ]
}

fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..2).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn identity3() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

fn identity2() -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() }))
}

/// `(A, B)` with `det A = det B = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    a: Mat3,
    b: Mat2,
    a_inv: Mat3,
    b_inv: Mat2,
}

impl GroupElement {
    pub fn new(a: Mat3, b: Mat2) -> Result<Self> {
        let da = det3(&a);
        if !da.is_one() {
            return Err(Error::NotUnimodular(da.to_string()));
        }
        let db = det2(&b);
        if !db.is_one() {
            return Err(Error::NotUnimodular(db.to_string()));
        }
        let a_inv = inv3(&a);
        let b_inv = inv2(&b);
        Ok(GroupElement { a, b, a_inv, b_inv })
    }

    pub fn from_integers(a: [[i64; 3]; 3], b: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(a.map(|r| r.map(rat)), b.map(|r| r.map(rat)))
    }

    pub fn identity() -> Self {
        Self::new(identity3(), identity2()).expect("identity is unimodular")
    }

    pub fn sl3(a: Mat3) -> Result<Self> {
        Self::new(a, identity2())
    }

    pub fn sl2(b: Mat2) -> Result<Self> {
        Self::new(identity3(), b)
    }

    pub fn a(&self) -> &Mat3 {
        &self.a
    }

    pub fn b(&self) -> &Mat2 {
        &self.b
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement::new(mul3(&self.a, &other.a), mul2(&self.b, &other.b))
            .expect("product of unimodular matrices")
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(self.a_inv.clone(), self.b_inv.clone()).expect("inverse is unimodular")
    }

    fn substitution(&self) -> Substitution {
        let mut sub = Substitution::new();
        for j in 0..3 {
            let col: Vec<Rational> = (0..3).map(|i| self.a[i][j].clone()).collect();
            sub.insert(E[j], Poly::linear(&E, &col));
            sub.insert(V[j], Poly::linear(&V, &col));
            let row: Vec<Rational> = self.a_inv[j].to_vec();
            sub.insert(X[j], Poly::linear(&X, &row));
            sub.insert(W[j], Poly::linear(&W, &row));
        }
        for j in 0..2 {
            let col: Vec<Rational> = (0..2).map(|i| self.b[i][j].clone()).collect();
            sub.insert(A[j], Poly::linear(&A, &col));
            let row: Vec<Rational> = self.b_inv[j].to_vec();
            sub.insert(Y[j], Poly::linear(&Y, &row));
        }
        sub
    }

    /// Acts on every non-auxiliary variable of `p`.
    pub fn act(&self, p: &Poly) -> Poly {
        p.substitute(&self.substitution())
    }

    pub fn act_form(&self, f: &BigradedForm) -> BigradedForm {
        BigradedForm::new_unchecked(self.act(f.poly()), f.edeg(), f.xdeg())
    }

    pub fn act_binary(&self, f: &BinaryForm) -> BinaryForm {
        BinaryForm::new(self.act(f.poly()), f.degree()).expect("SL2 preserves binary forms")
    }

    pub fn act_pair(&self, f: &MapPair) -> MapPair {
        MapPair::from_tensor(&self.act(&f.to_poly()), f.n()).expect("G preserves the pair space")
    }
}

/// The torus element `g(t) = (diag(t^-1, t^-1, t^2), I)`, as exponent weights.
pub const TORUS_WEIGHTS: [i32; 3] = [-1, -1, 2];

/// Applies `diag(t^w1, t^w2, t^w3)` to one monomial: returns the power of `t` it
/// picks up (points scale by `t^w`, coordinates by `t^-w`).
pub fn torus_exponent(m: &crate::poly::Monomial, weights: [i32; 3]) -> i32 {
    let mut k = 0i32;
    for i in 0..3 {
        k += weights[i] * (m.exponent(E[i]) as i32 + m.exponent(V[i]) as i32);
        k -= weights[i] * (m.exponent(X[i]) as i32 + m.exponent(W[i]) as i32);
    }
    k
}

/// A Laurent polynomial in `t` with polynomial coefficients, keyed by the power of `t`.
pub type Laurent = std::collections::BTreeMap<i32, Poly>;

/// `t^shift * diag(t^w).p` as a Laurent polynomial in `t`.
pub fn torus_act(p: &Poly, weights: [i32; 3], shift: i32) -> Laurent {
    let mut out = Laurent::new();
    for (m, c) in p.terms() {
        let k = torus_exponent(m, weights) + shift;
        out.entry(k).or_default().add_term(*m, c.clone());
    }
    out.retain(|_, q| !q.is_zero());
    out
}

/// Rewrites a Laurent polynomial with no positive powers of `t` as a polynomial in
/// `tinv = t^-1`; `None` if some positive power occurs.
pub fn laurent_in_inverse(l: &Laurent) -> Option<Poly> {
    let mut out = Poly::zero();
    for (&k, q) in l {
        if k > 0 {
            return None;
        }
        out += q * &Poly::monomial(&[(Var::Tinv, (-k) as u32)]);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    fn g1() -> GroupElement {
        GroupElement::from_integers([[1, 2, 0], [0, 1, 0], [3, 6, 1]], [[2, 1], [1, 1]]).unwrap()
    }

    fn g2() -> GroupElement {
        GroupElement::from_integers([[1, 0, 0], [-1, 1, 4], [0, 0, 1]], [[1, 0], [-3, 1]]).unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(GroupElement::from_integers([[2, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0], [0, 1]]).is_err());
    }

    #[test]
    fn identity_acts_trivially() {
        let f = p("x1*e2 + y1^2*a2 - 3*x3^2");
        assert_eq!(GroupElement::identity().act(&f), f);
    }

    #[test]
    fn pairing_is_invariant() {
        let euler = p("e1*x1 + e2*x2 + e3*x3");
        assert_eq!(g1().act(&euler), euler);
        let sl2 = p("a1*y1 + a2*y2");
        assert_eq!(g1().act(&sl2), sl2);
    }

    #[test]
    fn action_composes() {
        let f = p("x1^2*e3 - x2*x3*e1 + y1*a2 + w1*v2");
        let lhs = g1().compose(&g2()).act(&f);
        let rhs = g1().act(&g2().act(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_multiplicative() {
        let (f1, f2) = (p("x1 - e2*x3"), p("x2^2 + e1"));
        assert_eq!(g1().act(&(&f1 * &f2)), g1().act(&f1) * g1().act(&f2));
    }

    #[test]
    fn torus_rescales_x3() {
        // g(t) sends x3 to t^-2 x3, so t^2 g(t).x3 = x3.
        let l = torus_act(&p("x3"), TORUS_WEIGHTS, 2);
        assert_eq!(l.len(), 1);
        assert_eq!(l[&0], p("x3"));
        let l = torus_act(&p("x1 + e3"), TORUS_WEIGHTS, 0);
        assert_eq!(l[&1], p("x1"));
        assert_eq!(l[&2], p("e3"));
    }

    #[test]
    fn inverse_undoes_action() {
        let f = p("x1^3 - 2*x1*x2*x3 + e1*e2");
        assert_eq!(g1().inverse().act(&g1().act(&f)), f);
    }
}
