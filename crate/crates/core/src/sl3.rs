//! `SL3` machinery on `S^b C^3 (x) S^c C^3*`: the trace operator
//! `Delta = sum_i d/de_i d/dx_i`, its kernels `V(b, c)`, the harmonic projection,
//! and the bilinear covariants `rho_i`, `tau_i`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::BigradedForm;
use crate::linalg::Matrix;
use crate::poly::{rat, Monomial, Poly, Rational, Var, E, V, W, X};

/// `Delta(p) = sum_i d^2 p / de_i dx_i`, on any polynomial.
pub fn delta_poly(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for i in 0..3 {
        out += p.derivative(E[i]).derivative(X[i]);
    }
    out
}

/// `Delta` on a form of bidegree `(b, c)`; the zero form of bidegree
/// `(b-1, c-1)` (saturating) when either degree is zero.
pub fn delta(f: &BigradedForm) -> BigradedForm {
    let (b, c) = f.bidegree();
    if b == 0 || c == 0 {
        return BigradedForm::zero(b.saturating_sub(1), c.saturating_sub(1));
    }
    BigradedForm::new_unchecked(delta_poly(f.poly()), b - 1, c - 1)
}

/// `E = e1*x1 + e2*x2 + e3*x3`.
pub fn euler() -> Poly {
    (0..3).map(|i| Poly::monomial(&[(E[i], 1), (X[i], 1)])).sum()
}

pub fn euler_mult(f: &BigradedForm) -> BigradedForm {
    BigradedForm::new_unchecked(&euler() * f.poly(), f.edeg() + 1, f.xdeg() + 1)
}

/// An element of `V(b, c)`: a bigraded form killed by `Delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HarmonicForm(BigradedForm);

impl HarmonicForm {
    pub fn new(form: BigradedForm) -> Result<Self> {
        if !delta(&form).is_zero() {
            return Err(Error::NotHarmonic(form.to_string()));
        }
        Ok(HarmonicForm(form))
    }

    /// Pure forms (in `x` only or `e` only) are always harmonic.
    pub fn coord(poly: Poly, degree: u32) -> Result<Self> {
        Self::new(BigradedForm::coord(poly, degree)?)
    }

    pub fn point(poly: Poly, degree: u32) -> Result<Self> {
        Self::new(BigradedForm::point(poly, degree)?)
    }

    pub fn form(&self) -> &BigradedForm {
        &self.0
    }

    pub fn into_form(self) -> BigradedForm {
        self.0
    }

    pub fn poly(&self) -> &Poly {
        self.0.poly()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.0.bidegree()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

type Weight = [i32; 3];

fn weight(m: &Monomial) -> Weight {
    std::array::from_fn(|i| m.exponent(E[i]) as i32 - m.exponent(X[i]) as i32)
}

fn compositions3(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Monomial basis of `S^b C^3 (x) S^c C^3*`.
pub fn bigraded_basis(b: u32, c: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for ea in compositions3(b) {
        for xa in compositions3(c) {
            let pairs: Vec<(Var, u32)> =
                (0..3).map(|i| (E[i], ea[i])).chain((0..3).map(|i| (X[i], xa[i]))).collect();
            out.push(Monomial::from_pairs(&pairs));
        }
    }
    out
}

fn basis_by_weight(b: u32, c: u32) -> BTreeMap<Weight, Vec<Monomial>> {
    let mut out: BTreeMap<Weight, Vec<Monomial>> = BTreeMap::new();
    for m in bigraded_basis(b, c) {
        out.entry(weight(&m)).or_default().push(m);
    }
    out
}

/// `dim V(b, c) = (b+1)(c+1)(b+c+2)/2`.
pub fn vbc_dimension(b: u32, c: u32) -> u64 {
    let (b, c) = (b as u64, c as u64);
    (b + 1) * (c + 1) * (b + c + 2) / 2
}

/// Dimension of `Ker Delta` on `S^b C^3 (x) S^c C^3*`, by exact rank computation.
/// `Delta` preserves the torus weight, so the rank is accumulated block by block.
pub fn trace_kernel_dimension(b: u32, c: u32) -> usize {
    let total = bigraded_basis(b, c).len();
    if b == 0 || c == 0 {
        return total;
    }
    let targets = basis_by_weight(b - 1, c - 1);
    let mut rank = 0;
    for (w, sources) in basis_by_weight(b, c) {
        let Some(rows) = targets.get(&w) else { continue };
        let index: HashMap<Monomial, usize> = rows.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut mat = Matrix::zeros(rows.len(), sources.len());
        for (j, m) in sources.iter().enumerate() {
            for (t, coeff) in delta_poly(&Poly::term(rat(1), *m)).terms() {
                mat.set(index[t], j, coeff.clone());
            }
        }
        rank += mat.rank();
    }
    total - rank
}

/// The non-`(e, x)` variables; covariants are linear over them.
fn spectator_block() -> Vec<Var> {
    Var::ALL.iter().copied().filter(|v| !E.contains(v) && !X.contains(v)).collect()
}

/// Projection `pi_{b,c}` onto `V(b, c)`: writes `F = F0 + E*G` with `Delta F0 = 0`
/// and returns `F0`. `G` is found by solving `Delta(E*G) = Delta(F)` exactly.
pub fn harmonic_projection(f: &BigradedForm) -> Result<HarmonicForm> {
    let (b, c) = f.bidegree();
    if b == 0 || c == 0 || f.is_zero() {
        return Ok(HarmonicForm(f.clone()));
    }
    let basis = basis_by_weight(b - 1, c - 1);
    let e = euler();
    let mut systems: HashMap<Weight, (HashMap<Monomial, usize>, Matrix)> = HashMap::new();
    let mut out = Poly::zero();
    for (spectator, slice) in f.poly().split_by(&spectator_block()) {
        let rhs = delta_poly(&slice);
        if rhs.is_zero() {
            out += slice.mul_monomial(&spectator);
            continue;
        }
        let mut by_weight: BTreeMap<Weight, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in rhs.terms() {
            by_weight.entry(weight(m)).or_default().push((*m, c.clone()));
        }
        let mut g = Poly::zero();
        for (w, entries) in by_weight {
            let cols = basis
                .get(&w)
                .ok_or_else(|| Error::Internal(format!("weight {w:?} missing from basis")))?;
            let (index, mat) = systems.entry(w).or_insert_with(|| {
                let index: HashMap<Monomial, usize> =
                    cols.iter().enumerate().map(|(k, m)| (*m, k)).collect();
                let mut mat = Matrix::zeros(cols.len(), cols.len());
                for (j, m) in cols.iter().enumerate() {
                    let image = delta_poly(&(&e * &Poly::term(rat(1), *m)));
                    for (t, coeff) in image.terms() {
                        mat.set(index[t], j, coeff.clone());
                    }
                }
                (index, mat)
            });
            let mut vec_rhs = vec![Rational::zero(); cols.len()];
            for (m, c) in entries {
                vec_rhs[index[&m]] = c;
            }
            let sol = mat
                .solve(&vec_rhs)
                .ok_or_else(|| Error::Internal("harmonic projection system is inconsistent".into()))?;
            for (m, c) in cols.iter().zip(sol) {
                g.add_term(*m, c);
            }
        }
        out += (&slice - &(&e * &g)).mul_monomial(&spectator);
    }
    let result = BigradedForm::new_unchecked(out, b, c);
    debug_assert!(delta(&result).is_zero());
    Ok(HarmonicForm(result))
}

/// Signs attached to the six permutations of `{1, 2, 3}` in the contraction
/// operators. The Levi-Civita symbol gives the genuine covariants; other sign
/// patterns exist only to exercise the lemma checks against a broken kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epsilon {
    signs: [i8; 6],
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

impl Epsilon {
    pub const fn levi_civita() -> Self {
        Epsilon { signs: [1, 1, 1, -1, -1, -1] }
    }

    /// The Levi-Civita symbol with the sign of permutation `k` (in the order
    /// `123, 231, 312, 132, 321, 213`) flipped.
    pub fn with_flipped(k: usize) -> Self {
        let mut e = Self::levi_civita();
        e.signs[k] = -e.signs[k];
        e
    }

    fn terms(&self) -> impl Iterator<Item = ([usize; 3], i64)> + '_ {
        PERMUTATIONS.iter().zip(self.signs).map(|(p, s)| (*p, s as i64))
    }
}

impl Default for Epsilon {
    fn default() -> Self {
        Self::levi_civita()
    }
}

/// `sum_sigma sgn(sigma) mul[sigma1] * d/dfirst[sigma2] d/dsecond[sigma3] p`.
fn contract(p: &Poly, mul: &[Var; 3], first: &[Var; 3], second: &[Var; 3], eps: &Epsilon) -> Poly {
    let mut out = Poly::zero();
    let firsts: Vec<Poly> = first.iter().map(|&v| p.derivative(v)).collect();
    for (perm, sign) in eps.terms() {
        let d = firsts[perm[1]].derivative(second[perm[2]]);
        if d.is_zero() {
            continue;
        }
        let term = d.mul_monomial(&Monomial::var(mul[perm[0]])).scale(&rat(sign));
        out += term;
    }
    out
}

fn check_unpolarized(f: &HarmonicForm) -> Result<()> {
    if f.poly().involves_any(&V) {
        return Err(Error::ReservedBlock("v1..v3"));
    }
    if f.poly().involves_any(&W) {
        return Err(Error::ReservedBlock("w1..w3"));
    }
    Ok(())
}

/// `rho_i : V(b,c) x V(b',c') -> V(b+b'+i, c+c'-2i)`.
pub fn rho(f: &HarmonicForm, g: &HarmonicForm, i: u32) -> Result<HarmonicForm> {
    rho_with(f, g, i, &Epsilon::levi_civita())
}

/// `rho_i` with an explicit sign kernel. The second argument is polarized into
/// `w`, the operator `sum sgn(sigma) e_s1 d/dx_s2 d/dw_s3` is applied `i` times, the
/// copies are identified again, and the result is projected.
pub fn rho_with(f: &HarmonicForm, g: &HarmonicForm, i: u32, eps: &Epsilon) -> Result<HarmonicForm> {
    check_unpolarized(f)?;
    check_unpolarized(g)?;
    let ((b, c), (bp, cp)) = (f.bidegree(), g.bidegree());
    let max = c.min(cp);
    if i > max {
        return Err(Error::OrderOutOfRange { i, max });
    }
    let mut p = f.poly() * &g.poly().rename(&X, &W);
    for _ in 0..i {
        p = contract(&p, &E, &X, &W, eps);
    }
    let p = p.rename(&W, &X);
    harmonic_projection(&BigradedForm::new_unchecked(p, b + bp + i, c + cp - 2 * i))
}

/// `tau_i : V(b,c) x V(b',c') -> V(b+b'-2i, c+c'+i)`.
pub fn tau(f: &HarmonicForm, g: &HarmonicForm, i: u32) -> Result<HarmonicForm> {
    tau_with(f, g, i, &Epsilon::levi_civita())
}

/// Mirror of [`rho_with`]: polarize in `e` (into `v`), apply
/// `sum sgn(sigma) x_s1 d/de_s2 d/dv_s3` `i` times, identify, project.
pub fn tau_with(f: &HarmonicForm, g: &HarmonicForm, i: u32, eps: &Epsilon) -> Result<HarmonicForm> {
    check_unpolarized(f)?;
    check_unpolarized(g)?;
    let ((b, c), (bp, cp)) = (f.bidegree(), g.bidegree());
    let max = b.min(bp);
    if i > max {
        return Err(Error::OrderOutOfRange { i, max });
    }
    let mut p = f.poly() * &g.poly().rename(&E, &V);
    for _ in 0..i {
        p = contract(&p, &X, &E, &V, eps);
    }
    let p = p.rename(&V, &E);
    harmonic_projection(&BigradedForm::new_unchecked(p, b + bp - 2 * i, c + cp + i))
}

/// The pairing `<q, h^N>` for `q` in `S^N C^3` and `h = u1 x1 + u2 x2 + u3 x3`,
/// normalized as evaluation of `q` at `(u1, u2, u3)`.
pub fn apolar_eval(q: &BigradedForm, u: &[Rational; 3]) -> Result<Poly> {
    if q.xdeg() != 0 {
        return Err(Error::InvalidArgument("apolar pairing needs a pure point form".into()));
    }
    Ok(q.poly().eval(&[(E[0], u[0].clone()), (E[1], u[1].clone()), (E[2], u[2].clone())]))
}

/// Symbolic pairing: `q(u1, u2, u3)` as a polynomial in the `u` variables.
pub fn apolar_eval_symbolic(q: &BigradedForm) -> Result<Poly> {
    if q.xdeg() != 0 {
        return Err(Error::InvalidArgument("apolar pairing needs a pure point form".into()));
    }
    Ok(q.poly().rename(&E, &crate::poly::U))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;

    fn form(s: &str, b: u32, c: u32) -> BigradedForm {
        BigradedForm::new(p(s), b, c).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&form("e1*x1", 1, 1)).poly(), &p("1"));
        assert_eq!(delta(&form("e1*x1 + e2*x2 + e3*x3", 1, 1)).poly(), &p("3"));
        assert_eq!(delta(&form("x3^2*e1^3*e3", 4, 2)).poly(), &p("2*x3*e1^3"));
        assert!(delta(&form("x1^2", 0, 2)).is_zero());
    }

    #[test]
    fn euler_mult_examples() {
        let one = form("1", 0, 0);
        assert_eq!(euler_mult(&one).poly(), &euler());
        assert_eq!(delta(&euler_mult(&one)).poly(), &p("3"));
        assert!(euler_mult(&BigradedForm::zero(0, 0)).is_zero());
    }

    #[test]
    fn projection_examples() {
        let h = harmonic_projection(&form("e1*x2", 1, 1)).unwrap();
        assert_eq!(h.poly(), &p("e1*x2"));
        assert!(harmonic_projection(&form("e1*x1 + e2*x2 + e3*x3", 1, 1)).unwrap().is_zero());
        // e1 x1 = (e1 x1 - E/3) + E * (1/3)
        let h = harmonic_projection(&form("e1*x1", 1, 1)).unwrap();
        assert_eq!(h.poly(), &p("2/3*e1*x1 - 1/3*e2*x2 - 1/3*e3*x3"));
    }

    #[test]
    fn projection_is_linear_over_spectators() {
        let f = form("a1*e1*x1 + tinv*e2*x2", 1, 1);
        let h = harmonic_projection(&f).unwrap();
        let a = harmonic_projection(&form("e1*x1", 1, 1)).unwrap();
        let t = harmonic_projection(&form("e2*x2", 1, 1)).unwrap();
        assert_eq!(h.poly(), &(a.poly() * &p("a1") + t.poly() * &p("tinv")));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(vbc_dimension(0, 0), 1);
        assert_eq!(vbc_dimension(1, 2), 15);
        assert_eq!(vbc_dimension(2, 2), 27);
        assert_eq!(trace_kernel_dimension(1, 2), 15);
        assert_eq!(trace_kernel_dimension(2, 2), 27);
    }

    #[test]
    fn rho_of_power_of_x3() {
        // rho_n(x3^n, f) is proportional to f(e2, -e1, 0).
        for (fs, n) in [("x1^2 - 3*x1*x2 + x2*x3 + x3^2", 2), ("x1^3 + 2*x2^2*x3 - x1*x2^2", 3)] {
            let h = HarmonicForm::coord(p("x3").pow(n), n).unwrap();
            let f = HarmonicForm::coord(p(fs), n).unwrap();
            let r = rho(&h, &f, n).unwrap();
            let expected = p(fs).substitute(
                &crate::poly::Substitution::new()
                    .set(Var::X1, p("e2"))
                    .set(Var::X2, p("-e1"))
                    .set(Var::X3, Poly::zero()),
            );
            assert!(r.poly().ratio_to(&expected).is_some_and(|c| !c.is_zero()), "{r:?}");
        }
    }

    #[test]
    fn rho_one_kills_powers() {
        let h = HarmonicForm::coord(p("2*x1 - x2 + 5*x3"), 1).unwrap();
        let hk = HarmonicForm::coord(p("2*x1 - x2 + 5*x3").pow(4), 4).unwrap();
        assert!(rho(&h, &hk, 1).unwrap().is_zero());
    }

    #[test]
    fn rho_one_explicit() {
        // sum sgn(s) e_s1 dx3/dx_s2 d(x1 x2)/dx_s3: only s2 = 3 survives, s3 in {1, 2}:
        //   (s1,s2,s3) = (2,3,1) even: e2 * x2 ; (1,3,2) odd: -e1 * x1.
        // Projection of e2 x2 - e1 x1 at (1,1) is itself (trace zero).
        let h = HarmonicForm::coord(p("x3"), 1).unwrap();
        let q = HarmonicForm::coord(p("x1*x2"), 2).unwrap();
        let r = rho(&h, &q, 1).unwrap();
        assert_eq!(r.poly(), &p("e2*x2 - e1*x1"));
        assert_eq!(r.bidegree(), (1, 1));
    }

    #[test]
    fn tau_examples() {
        let f = HarmonicForm::point(p("e1^2"), 2).unwrap();
        let g = HarmonicForm::point(p("e2^2"), 2).unwrap();
        // Only x3 d/de1 d/dv2 acts on e1^2 v2^2: first 4 x3 e1 v2, then 4 x3^2.
        let t = tau(&f, &g, 2).unwrap();
        assert_eq!(t.poly(), &p("4*x3^2"));
        let t0 = tau(&f, &g, 0).unwrap();
        assert_eq!(t0.poly(), &p("e1^2*e2^2"));
    }

    #[test]
    fn order_range_checks() {
        let h = HarmonicForm::coord(p("x3"), 1).unwrap();
        assert!(matches!(rho(&h, &h, 2), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(tau(&h, &h, 1), Err(Error::OrderOutOfRange { .. })));
    }

    #[test]
    fn polarization_block_is_reserved() {
        let bad = HarmonicForm::coord(p("w1"), 0);
        // w is not an x variable, so this is a (0,0) form carrying w as spectator.
        let bad = bad.unwrap();
        let h = HarmonicForm::coord(p("x3"), 1).unwrap();
        assert_eq!(rho(&h, &bad, 0).unwrap_err(), Error::ReservedBlock("w1..w3"));
    }

    #[test]
    fn apolar_examples() {
        let q = BigradedForm::point(p("e3"), 1).unwrap();
        assert_eq!(apolar_eval(&q, &[rat(0), rat(0), rat(1)]).unwrap(), p("1"));
        let q = BigradedForm::point(p("e1^3*e3"), 4).unwrap();
        assert_eq!(apolar_eval_symbolic(&q).unwrap(), p("u1^3*u3"));
    }
}
