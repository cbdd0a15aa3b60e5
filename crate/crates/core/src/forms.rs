//! Graded wrappers around [`Poly`]: forms in `S^b C^3 (x) S^c C^3*`, binary forms,
//! and pairs of ternary forms (elements of `S^n C^3* (x) C^2`).

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, Var, A, E, X, Y};

/// A polynomial of degree exactly `edeg` in `e1..e3` and `xdeg` in `x1..x3`. Other
/// variables may appear as spectators (parameters the covariants are linear over).
/// The zero form keeps its nominal bidegree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigradedForm {
    poly: Poly,
    edeg: u32,
    xdeg: u32,
}

impl BigradedForm {
    pub fn new(poly: Poly, edeg: u32, xdeg: u32) -> Result<Self> {
        let ok = poly
            .terms()
            .all(|(m, _)| m.degree_in(&E) == edeg && m.degree_in(&X) == xdeg);
        if !ok {
            return Err(Error::NotBihomogeneous { edeg, xdeg, poly: poly.to_string() });
        }
        Ok(BigradedForm { poly, edeg, xdeg })
    }

    /// Infers the bidegree from the (nonzero) polynomial.
    pub fn from_poly(poly: Poly) -> Result<Self> {
        let (edeg, xdeg) = match poly.leading() {
            Some((m, _)) => (m.degree_in(&E), m.degree_in(&X)),
            None => {
                return Err(Error::InvalidArgument(
                    "cannot infer the bidegree of the zero polynomial".into(),
                ))
            }
        };
        Self::new(poly, edeg, xdeg)
    }

    pub fn zero(edeg: u32, xdeg: u32) -> Self {
        BigradedForm { poly: Poly::zero(), edeg, xdeg }
    }

    /// An element of `S^c C^3*`: a form in `x` only.
    pub fn coord(poly: Poly, degree: u32) -> Result<Self> {
        Self::new(poly, 0, degree)
    }

    /// An element of `S^b C^3`: a form in `e` only.
    pub fn point(poly: Poly, degree: u32) -> Result<Self> {
        Self::new(poly, degree, 0)
    }

    pub(crate) fn new_unchecked(poly: Poly, edeg: u32, xdeg: u32) -> Self {
        debug_assert!(Self::new(poly.clone(), edeg, xdeg).is_ok());
        BigradedForm { poly, edeg, xdeg }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn edeg(&self) -> u32 {
        self.edeg
    }

    pub fn xdeg(&self) -> u32 {
        self.xdeg
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.edeg, self.xdeg)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BigradedForm { poly: self.poly.scale(c), ..self.clone() }
    }

    pub fn mul(&self, other: &BigradedForm) -> BigradedForm {
        BigradedForm {
            poly: &self.poly * &other.poly,
            edeg: self.edeg + other.edeg,
            xdeg: self.xdeg + other.xdeg,
        }
    }

    pub fn add(&self, other: &BigradedForm) -> Result<BigradedForm> {
        if self.bidegree() != other.bidegree() {
            return Err(Error::InvalidArgument(format!(
                "bidegree mismatch {:?} vs {:?}",
                self.bidegree(),
                other.bidegree()
            )));
        }
        Ok(BigradedForm { poly: &self.poly + &other.poly, ..self.clone() })
    }

    /// Partial derivative; shifts the degree of the affected block by one.
    pub fn derivative(&self, v: Var) -> BigradedForm {
        let (edeg, xdeg) = match v {
            Var::E1 | Var::E2 | Var::E3 => (self.edeg.saturating_sub(1), self.xdeg),
            Var::X1 | Var::X2 | Var::X3 => (self.edeg, self.xdeg.saturating_sub(1)),
            _ => (self.edeg, self.xdeg),
        };
        BigradedForm { poly: self.poly.derivative(v), edeg, xdeg }
    }

    pub fn pow(&self, k: u32) -> BigradedForm {
        BigradedForm { poly: self.poly.pow(k), edeg: self.edeg * k, xdeg: self.xdeg * k }
    }
}

impl fmt::Debug for BigradedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigradedForm[({}, {})]({})", self.edeg, self.xdeg, self.poly)
    }
}

impl fmt::Display for BigradedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// A binary form of degree `degree` in `y1, y2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    poly: Poly,
    degree: u32,
}

impl BinaryForm {
    pub fn new(poly: Poly, degree: u32) -> Result<Self> {
        let ok = poly
            .terms()
            .all(|(m, _)| m.degree_in(&Y) == degree && m.degree() == m.degree_in(&Y));
        if !ok {
            return Err(Error::NotBinaryForm { degree, poly: poly.to_string() });
        }
        Ok(BinaryForm { poly, degree })
    }

    pub fn zero(degree: u32) -> Self {
        BinaryForm { poly: Poly::zero(), degree }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm[{}]({})", self.degree, self.poly)
    }
}

/// `f1 (x) a1 + f2 (x) a2` with both components ternary forms of degree `n` in `x`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapPair {
    f1: BigradedForm,
    f2: BigradedForm,
}

impl MapPair {
    pub fn new(f1: Poly, f2: Poly, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("map degree n must be positive".into()));
        }
        for f in [&f1, &f2] {
            if f.involves_any(&E) || f.involves_any(&A) {
                return Err(Error::NotBihomogeneous { edeg: 0, xdeg: n, poly: f.to_string() });
            }
        }
        Ok(MapPair { f1: BigradedForm::coord(f1, n)?, f2: BigradedForm::coord(f2, n)? })
    }

    /// Infers `n` from whichever component is nonzero.
    pub fn from_polys(f1: Poly, f2: Poly) -> Result<Self> {
        let n = f1
            .degree_in(&X)
            .or_else(|| f2.degree_in(&X))
            .ok_or_else(|| Error::InvalidArgument("cannot infer n from two zero forms".into()))?;
        Self::new(f1, f2, n)
    }

    pub fn n(&self) -> u32 {
        self.f1.xdeg()
    }

    pub fn f1(&self) -> &BigradedForm {
        &self.f1
    }

    pub fn f2(&self) -> &BigradedForm {
        &self.f2
    }

    pub fn scale(&self, c: &Rational) -> MapPair {
        MapPair { f1: self.f1.scale(c), f2: self.f2.scale(c) }
    }

    /// The tensor `f1*a1 + f2*a2` as a single polynomial.
    pub fn to_poly(&self) -> Poly {
        self.f1.poly() * &Poly::var(Var::A1) + self.f2.poly() * &Poly::var(Var::A2)
    }

    /// Inverse of [`MapPair::to_poly`].
    pub fn from_tensor(p: &Poly, n: u32) -> Result<Self> {
        let parts = p.split_by(&A);
        let mut f1 = Poly::zero();
        let mut f2 = Poly::zero();
        for (m, q) in parts {
            if m == crate::poly::Monomial::var(Var::A1) {
                f1 = q;
            } else if m == crate::poly::Monomial::var(Var::A2) {
                f2 = q;
            } else {
                return Err(Error::InvalidArgument(format!("not linear in a1, a2: {p}")));
            }
        }
        Self::new(f1, f2, n)
    }
}

impl fmt::Display for MapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) (x) a1 + ({}) (x) a2", self.f1, self.f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    #[test]
    fn rejects_mixed_bidegree() {
        assert!(BigradedForm::new(p("e1*x1 + x2"), 1, 1).is_err());
        assert!(BigradedForm::new(p("e1*x1 + e2*x3"), 1, 1).is_ok());
    }

    #[test]
    fn zero_keeps_nominal_bidegree() {
        let z = BigradedForm::new(Poly::zero(), 3, 2).unwrap();
        assert_eq!(z.bidegree(), (3, 2));
    }

    #[test]
    fn derivative_shifts_degree() {
        let f = BigradedForm::new(p("e1^2*x3 + e2*e3*x1"), 2, 1).unwrap();
        assert_eq!(f.derivative(Var::E1).bidegree(), (1, 1));
        assert_eq!(f.derivative(Var::X3).bidegree(), (2, 0));
    }

    #[test]
    fn map_pair_tensor_round_trip() {
        let f = MapPair::new(p("x1*x3 + x2^2"), p("x2*x3"), 2).unwrap();
        assert_eq!(MapPair::from_tensor(&f.to_poly(), 2).unwrap(), f);
        assert!(MapPair::new(p("x1"), p("x1^2"), 1).is_err());
    }

    #[test]
    fn binary_form_checks_degree() {
        assert!(BinaryForm::new(p("y1^2 - y1*y2"), 2).is_ok());
        assert!(BinaryForm::new(p("y1^2 - y1"), 2).is_err());
        assert!(BinaryForm::new(p("y1*x1"), 2).is_err());
    }
}
