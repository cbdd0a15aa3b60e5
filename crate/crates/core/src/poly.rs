//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial lives over one fixed alphabet of variables ([`Var`]); each
//! variable carries a [`VarRole`] that decides how the group `SL3 x SL2` acts on
//! it. Monomials are dense exponent arrays ordered graded-lexicographically, so
//! the textual form of a polynomial is canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// How the group acts on a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarRole {
    /// Standard basis vectors of C^3 (`e1..e3`, and the polarization copy `v1..v3`).
    Point3,
    /// Coordinates on C^3, the dual basis (`x1..x3`, and the copy `w1..w3`).
    Coord3,
    /// Coordinates on C^2 (`y1, y2`).
    Coord2,
    /// Standard basis vectors of C^2 (`a1, a2`).
    Point2,
    /// Not acted on: line parameters, coefficient symbols, affine chart, torus.
    Auxiliary,
}

macro_rules! vars {
    ($($v:ident = $name:literal : $role:ident),* $(,)?) => {
        /// The variable alphabet shared by every polynomial.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Var { $($v),* }

        impl Var {
            pub const ALL: [Var; NVARS] = [$(Var::$v),*];

            pub fn name(self) -> &'static str {
                match self { $(Var::$v => $name),* }
            }

            pub fn role(self) -> VarRole {
                match self { $(Var::$v => VarRole::$role),* }
            }

            pub fn from_name(s: &str) -> Option<Var> {
                match s { $($name => Some(Var::$v),)* _ => None }
            }
        }
    };
}

pub const NVARS: usize = 24;

vars! {
    E1 = "e1": Point3, E2 = "e2": Point3, E3 = "e3": Point3,
    X1 = "x1": Coord3, X2 = "x2": Coord3, X3 = "x3": Coord3,
    Y1 = "y1": Coord2, Y2 = "y2": Coord2,
    A1 = "a1": Point2, A2 = "a2": Point2,
    S = "s": Auxiliary, T = "t": Auxiliary,
    U1 = "u1": Auxiliary, U2 = "u2": Auxiliary, U3 = "u3": Auxiliary,
    Z1 = "z1": Auxiliary, Z2 = "z2": Auxiliary,
    V1 = "v1": Point3, V2 = "v2": Point3, V3 = "v3": Point3,
    W1 = "w1": Coord3, W2 = "w2": Coord3, W3 = "w3": Coord3,
    Tinv = "tinv": Auxiliary,
}

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const E: [Var; 3] = [Var::E1, Var::E2, Var::E3];
pub const X: [Var; 3] = [Var::X1, Var::X2, Var::X3];
pub const Y: [Var; 2] = [Var::Y1, Var::Y2];
pub const A: [Var; 2] = [Var::A1, Var::A2];
pub const U: [Var; 3] = [Var::U1, Var::U2, Var::U3];
pub const Z: [Var; 2] = [Var::Z1, Var::Z2];
/// Second copy of the point block, used to polarize in the `e` variables.
pub const V: [Var; 3] = [Var::V1, Var::V2, Var::V3];
/// Second copy of the coordinate block, used to polarize in the `x` variables.
pub const W: [Var; 3] = [Var::W1, Var::W2, Var::W3];

/// A monomial as a dense exponent vector. The cached total degree comes first so
/// the derived ordering is graded-lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    exps: [u8; NVARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { deg: 0, exps: [0; NVARS] }
    }

    pub fn var(v: Var) -> Self {
        Self::one().with_exponent(v, 1)
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m = m.with_exponent(v, m.exponent(v) + e);
        }
        m
    }

    #[inline]
    pub fn exponent(&self, v: Var) -> u32 {
        self.exps[v.index()] as u32
    }

    #[inline]
    pub fn exponents(&self) -> &[u8; NVARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn degree_in(&self, block: &[Var]) -> u32 {
        block.iter().map(|&v| self.exponent(v)).sum()
    }

    pub fn with_exponent(mut self, v: Var, e: u32) -> Self {
        let e = u8::try_from(e).expect("exponent overflow (> 255)");
        let old = self.exps[v.index()];
        self.exps[v.index()] = e;
        self.deg = self.deg - old as u16 + e as u16;
        self
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow (> 255)");
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial { deg: self.deg - other.deg, exps })
    }

    /// Keeps only the variables in `keep`; the rest are set to exponent zero.
    pub fn restrict(&self, keep: &[Var]) -> Monomial {
        let mut m = Monomial::one();
        for &v in keep {
            m = m.with_exponent(v, self.exponent(v));
        }
        m
    }

    /// Returns `(inside, outside)` where `inside` carries the exponents of `block`.
    pub fn split(&self, block: &[Var]) -> (Monomial, Monomial) {
        let inside = self.restrict(block);
        let outside = self.div(&inside).expect("restriction divides");
        (inside, outside)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        Var::ALL
            .iter()
            .filter(move |v| self.exps[v.index()] > 0)
            .map(move |&v| (v, self.exps[v.index()] as u32))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over the rationals. No zero coefficient is ever
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Simultaneous substitution `var -> image`; unmapped variables are left alone.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: Vec<Option<Poly>>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution { images: vec![None; NVARS] }
    }

    pub fn set(mut self, v: Var, image: Poly) -> Self {
        self.images[v.index()] = Some(image);
        self
    }

    pub fn insert(&mut self, v: Var, image: Poly) {
        self.images[v.index()] = Some(image);
    }

    pub fn get(&self, v: Var) -> Option<&Poly> {
        self.images[v.index()].as_ref()
    }

    /// Renames `from[k] -> to[k]`.
    pub fn renaming(from: &[Var], to: &[Var]) -> Self {
        let mut s = Self::new();
        for (&a, &b) in from.iter().zip(to) {
            s.insert(a, Poly::var(b));
        }
        s
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(pairs: &[(Var, u32)]) -> Self {
        Self::term(Rational::one(), Monomial::from_pairs(pairs))
    }

    /// Linear form `sum coeffs[i] * vars[i]`.
    pub fn linear(vars: &[Var], coeffs: &[Rational]) -> Self {
        let mut p = Self::zero();
        for (&v, c) in vars.iter().zip(coeffs) {
            p.add_term(Monomial::var(v), c.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Greatest monomial in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree in `block` if every term has the same degree there; `None` for the
    /// zero polynomial or mixed degrees.
    pub fn degree_in(&self, block: &[Var]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree_in(block));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn max_degree_in(&self, block: &[Var]) -> u32 {
        self.terms.keys().map(|m| m.degree_in(block)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn involves_any(&self, block: &[Var]) -> bool {
        block.iter().any(|&v| self.involves(v))
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.terms.insert(m.with_exponent(v, e - 1), c * rat(e as i64));
            }
        }
        out
    }

    /// Splits the polynomial by its monomial part in `block`:
    /// `self = sum_k k * result[k]` where the values do not involve `block`.
    pub fn split_by(&self, block: &[Var]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(block);
            out.entry(inside).or_default().terms.insert(outside, c.clone());
        }
        out
    }

    /// Simultaneous substitution of the variables named in `sub`.
    pub fn substitute(&self, sub: &Substitution) -> Poly {
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); NVARS];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = *m;
            let mut acc = Poly::constant(c.clone());
            for v in Var::ALL {
                let e = m.exponent(v) as usize;
                if e == 0 {
                    continue;
                }
                if let Some(image) = sub.get(v) {
                    kept = kept.with_exponent(v, 0);
                    let cache = &mut powers[v.index()];
                    if cache.is_empty() {
                        cache.push(Poly::one());
                    }
                    while cache.len() <= e {
                        let next = cache.last().unwrap() * image;
                        cache.push(next);
                    }
                    acc = &acc * &cache[e];
                }
            }
            out += acc.mul_monomial(&kept);
        }
        out
    }

    /// Substitutes rational values for some variables.
    pub fn eval(&self, point: &[(Var, Rational)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = *m;
            let mut coeff = c.clone();
            for (v, val) in point {
                let e = m.exponent(*v);
                if e > 0 {
                    kept = kept.with_exponent(*v, 0);
                    coeff *= num_traits::pow(val.clone(), e as usize);
                }
            }
            out.add_term(kept, coeff);
        }
        out
    }

    pub fn rename(&self, from: &[Var], to: &[Var]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut k = *m;
            for &v in from {
                k = k.with_exponent(v, 0);
            }
            for (&a, &b) in from.iter().zip(to) {
                let e = m.exponent(a);
                if e > 0 {
                    k = k.with_exponent(b, k.exponent(b) + e);
                }
            }
            out.add_term(k, c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Poly::term(qc.clone(), qm);
            rem -= &(divisor * &t);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// `Some(c)` with `self == c * other` (requires `other != 0`).
    pub fn ratio_to(&self, other: &Poly) -> Option<Rational> {
        let (m, c) = other.leading()?;
        let lambda = self.coeff(m) / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// Divides all coefficients by a common content so the result has integer
    /// coefficients; returns `(scale, primitive)` with `self == scale * primitive`.
    pub fn clear_denominators(&self) -> (Rational, Poly) {
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let factor = Rational::from_integer(lcm);
        (factor.recip(), self.scale(&factor))
    }

    pub fn from_str_checked(s: &str) -> Result<Poly> {
        s.parse()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", a, m)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        Parser { src: s.as_bytes(), pos: 0 }.parse_poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().expect("digits"))
    }

    fn small_integer(&mut self) -> Result<u32> {
        let n = self.integer()?;
        u32::try_from(&n).or_else(|_| self.err("exponent too large"))
    }

    fn ident(&mut self) -> Result<Var> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Var::from_name(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    Ok(Poly::constant(Rational::new(num, den)))
                } else {
                    Ok(Poly::constant(Rational::from_integer(num)))
                }
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let v = self.ident()?;
                let mut e = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.small_integer()?;
                }
                Ok(Poly::monomial(&[(v, e)]))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.small_integer()?;
                    return Ok(inner.pow(e));
                }
                Ok(inner)
            }
            _ => self.err("expected coefficient, variable or `(`"),
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn parse_poly(mut self) -> Result<Poly> {
        let p = self.sum()?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(p)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl num_traits::Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

/// Parses a polynomial in the text grammar; panics on malformed input. Meant for
/// fixtures and tests.
pub fn p(s: &str) -> Poly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x1 + x2") * p("x1 - x2"), p("x1^2 - x2^2"));
    }

    #[test]
    fn add_zero_is_identity() {
        let q = p("3/4*x1^2*x3 - e2");
        assert_eq!(&q + &Poly::zero(), q);
    }

    #[test]
    fn hand_expansion() {
        assert_eq!(p("x1*x3 + x2^2") * p("x2*x3"), p("x1*x2*x3^2 + x2^3*x3"));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(p("x3^2").derivative(Var::X3), p("2*x3"));
        assert_eq!(p("x1*x3 + x2^2").derivative(Var::X2), p("2*x2"));
        assert_eq!(p("e1^3*e3").derivative(Var::E3), p("e1^3"));
    }

    #[test]
    fn substitution_into_sl2_basis() {
        let sub = Substitution::new().set(Var::Y1, p("a2")).set(Var::Y2, p("-a1"));
        assert_eq!(p("y1*y2").substitute(&sub), p("-a1*a2"));
    }

    #[test]
    fn identity_substitution() {
        let q = p("x1^2*e3 - 5*x2 + 1/3");
        let sub = Substitution::renaming(&X, &X);
        assert_eq!(q.substitute(&sub), q);
    }

    #[test]
    fn substitute_then_clear() {
        // x3^2 * F(x1/x3, x2/x3) with F = z1 + z2^2, realised as z -> x and
        // padding every term with x3 up to degree 2.
        let f = p("z1 + z2^2");
        let lifted = f.rename(&Z, &[Var::X1, Var::X2]);
        let mut out = Poly::zero();
        for (m, c) in lifted.terms() {
            let pad = 2 - m.degree();
            out += Poly::term(c.clone(), m.mul(&Monomial::from_pairs(&[(Var::X3, pad)])));
        }
        assert_eq!(out, p("x1*x3 + x2^2"));
    }

    #[test]
    fn printing_is_canonical() {
        let q = p("x2 - 3/2 + x1^2*x3 + x1");
        assert_eq!(q.to_string(), "x1^2*x3 + x1 + x2 - 3/2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p("-x1").to_string(), "-x1");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("x9".parse::<Poly>(), Err(Error::UnknownVariable(_))));
        assert!(matches!("x1 +".parse::<Poly>(), Err(Error::Parse { .. })));
        assert!(matches!("1/0".parse::<Poly>(), Err(Error::Parse { .. })));
        assert!(matches!("x1 x2".parse::<Poly>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn parenthesized_powers() {
        assert_eq!(p("(x1 + x2)^2"), p("x1^2 + 2*x1*x2 + x2^2"));
        assert_eq!(p("x3*(a1 - a2)^3"), p("x3*a1^3 - 3*x3*a1^2*a2 + 3*x3*a1*a2^2 - x3*a2^3"));
    }

    #[test]
    fn exact_division() {
        let e = p("e1*x1 + e2*x2 + e3*x3");
        let g = p("e1*x2 - 7*e3*x3 + 2*e2*x1");
        assert_eq!((&e * &g).div_exact(&e), Some(g.clone()));
        assert_eq!((&e * &g + p("x1")).div_exact(&e), None);
    }

    #[test]
    fn ratio_detection() {
        let a = p("x1^2 - x2");
        assert_eq!(a.scale(&ratio(-3, 4)).ratio_to(&a), Some(ratio(-3, 4)));
        assert_eq!(p("x1^2 + x2").ratio_to(&a), None);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let q = p("x1 - 2*x3 + e1");
        let mut acc = Poly::one();
        for k in 0..6 {
            assert_eq!(q.pow(k), acc);
            acc = &acc * &q;
        }
    }
}
