//! Covariants of binary forms.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::poly::{Poly, Rational, Substitution, Var};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn derivative_n(p: &Poly, v: Var, k: u32) -> Poly {
    (0..k).fold(p.clone(), |acc, _| acc.derivative(v))
}

/// The `i`-th transvectant
///
/// `psi_i(f, g) = (b-i)!(b'-i)!/(b! b'!) * sum_j (-1)^j C(i,j) d^i f/dy1^(i-j) dy2^j * d^i g/dy1^j dy2^(i-j)`
///
/// for `f` of degree `b` and `g` of degree `b'`, landing in degree `b + b' - 2i`.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, i: u32) -> Result<BinaryForm> {
    let (b, bp) = (f.degree(), g.degree());
    let max = b.min(bp);
    if i > max {
        return Err(Error::OrderOutOfRange { i, max });
    }
    let mut sum = Poly::zero();
    for j in 0..=i {
        let df = derivative_n(&derivative_n(f.poly(), Var::Y1, i - j), Var::Y2, j);
        let dg = derivative_n(&derivative_n(g.poly(), Var::Y1, j), Var::Y2, i - j);
        let c = Rational::from_integer(binomial(i, j));
        let term = (&df * &dg).scale(&c);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let prefactor = Rational::new(
        factorial(b - i) * factorial(bp - i),
        factorial(b) * factorial(bp),
    );
    BinaryForm::new(sum.scale(&prefactor), b + bp - 2 * i)
}

/// `V(b) -> S^b C^2`, `f(y1, y2) -> f(a2, -a1)`.
pub fn sl2_iso(f: &BinaryForm) -> Poly {
    let sub = Substitution::new()
        .set(Var::Y1, Poly::var(Var::A2))
        .set(Var::Y2, -Poly::var(Var::A1));
    f.poly().substitute(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    fn bf(s: &str, d: u32) -> BinaryForm {
        BinaryForm::new(p(s), d).unwrap()
    }

    #[test]
    fn order_zero_is_product() {
        let (f, g) = (bf("y1^2 - 3*y1*y2", 2), bf("y2^3 + y1^3", 3));
        assert_eq!(transvectant(&f, &g, 0).unwrap().poly(), &(f.poly() * g.poly()));
    }

    #[test]
    fn squares_first_transvectant() {
        // (1/4) * (2 y1 * 2 y2 - 0)
        let t = transvectant(&bf("y1^2", 2), &bf("y2^2", 2), 1).unwrap();
        assert_eq!(t.poly(), &p("y1*y2"));
        assert_eq!(t.degree(), 2);
    }

    #[test]
    fn first_transvectant_is_alternating() {
        let f = bf("y1^3 - 2*y1*y2^2 + 5*y2^3", 3);
        assert!(transvectant(&f, &f, 1).unwrap().is_zero());
    }

    #[test]
    fn order_out_of_range() {
        let err = transvectant(&bf("y1", 1), &bf("y2^4", 4), 2).unwrap_err();
        assert_eq!(err, Error::OrderOutOfRange { i: 2, max: 1 });
    }

    #[test]
    fn iso_images() {
        assert_eq!(sl2_iso(&bf("y1", 1)), p("a2"));
        assert_eq!(sl2_iso(&bf("y2", 1)), p("-a1"));
        assert_eq!(sl2_iso(&bf("y1*y2", 2)), p("-a1*a2"));
    }

    #[test]
    fn second_transvectant_of_monomial_square() {
        // psi_2(y1^a y2^b, same) = 2ab(1-a-b)/(n^2 (n-1)^2) y1^(2a-2) y2^(2b-2), n = a+b
        let f = bf("y1^2*y2^3", 5);
        let t = transvectant(&f, &f, 2).unwrap();
        let expected = p("y1^2*y2^4").scale(&crate::poly::ratio(2 * 2 * 3 * (1 - 5), 25 * 16));
        assert_eq!(t.poly(), &expected);
    }
}
