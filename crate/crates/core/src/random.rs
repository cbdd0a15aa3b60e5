//! Random test instances: forms, pairs, unimodular matrices, and products of lines
//! with a prescribed set of common zeros.

use num_traits::Zero;
use rand::Rng;

use crate::forms::{BigradedForm, MapPair};
use crate::group::{GroupElement, Mat2, Mat3};
use crate::poly::{rat, Monomial, Poly, Rational, Var, X};
use crate::sl3::bigraded_basis;

pub fn random_integer<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Rational {
    rat(rng.gen_range(-height..=height))
}

fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Rational {
    loop {
        let c = random_integer(rng, height);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A dense form of degree `n` in `x` with integer coefficients in `[-height, height]`.
pub fn random_coord_form<R: Rng + ?Sized>(rng: &mut R, n: u32, height: i64) -> BigradedForm {
    random_bigraded(rng, 0, n, height)
}

/// A dense form of bidegree `(b, c)`.
pub fn random_bigraded<R: Rng + ?Sized>(rng: &mut R, b: u32, c: u32, height: i64) -> BigradedForm {
    let p = Poly::from_terms(bigraded_basis(b, c).into_iter().map(|m| (m, random_integer(rng, height))));
    BigradedForm::new(p, b, c).expect("basis monomials have the right bidegree")
}

/// A nonzero linear form in `x`.
pub fn random_linear_form<R: Rng + ?Sized>(rng: &mut R, height: i64) -> BigradedForm {
    loop {
        let f = random_coord_form(rng, 1, height);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, n: u32, height: i64) -> MapPair {
    let f1 = random_coord_form(rng, n, height).into_poly();
    let f2 = random_coord_form(rng, n, height).into_poly();
    MapPair::new(f1, f2, n).expect("coordinate forms of degree n")
}

/// A binary form of degree `d` in `y1, y2`.
pub fn random_binary<R: Rng + ?Sized>(rng: &mut R, d: u32, height: i64) -> Poly {
    Poly::from_terms((0..=d).map(|k| {
        (Monomial::from_pairs(&[(Var::Y1, d - k), (Var::Y2, k)]), random_integer(rng, height))
    }))
}

/// A unimodular integer 3x3 matrix: a product of `steps` elementary shears with
/// multipliers in `[-2, 2]`, times a signed permutation of determinant one.
pub fn random_unimodular3<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> Mat3 {
    let mut m: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..steps {
        let i = rng.gen_range(0..3);
        let j = (i + rng.gen_range(1..3)) % 3;
        let c = rng.gen_range(-2..=2);
        for k in 0..3 {
            m[i][k] += c * m[j][k];
        }
    }
    if rng.gen_bool(0.5) {
        // cyclic permutation of rows, determinant one
        m = [m[1], m[2], m[0]];
    }
    m.map(|r| r.map(rat))
}

pub fn random_unimodular2<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> Mat2 {
    let mut m: [[i64; 2]; 2] = [[1, 0], [0, 1]];
    for _ in 0..steps {
        let i = rng.gen_range(0..2);
        let c = rng.gen_range(-2..=2);
        for k in 0..2 {
            m[i][k] += c * m[1 - i][k];
        }
    }
    if rng.gen_bool(0.5) {
        m = [[-m[1][0], -m[1][1]], m[0]];
    }
    m.map(|r| r.map(rat))
}

pub fn random_group_element<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    GroupElement::new(random_unimodular3(rng, 4), random_unimodular2(rng, 3)).expect("unimodular by construction")
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn proportional(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    cross(a, b).iter().all(Zero::is_zero)
}

/// A pair of products of lines with known common zeros.
#[derive(Clone, Debug)]
pub struct LineProducts {
    pub pair: MapPair,
    pub lines1: Vec<[Rational; 3]>,
    pub lines2: Vec<[Rational; 3]>,
    /// The `n^2` intersection points `lines1[i] x lines2[j]`, row-major in `(i, j)`.
    pub points: Vec<[Rational; 3]>,
}

/// `f1 = prod l_i`, `f2 = prod m_j` with `n^2` pairwise distinct intersection points,
/// of which exactly `at_infinity` (`l_k ^ m_k` for `k < at_infinity`) lie on `x3 = 0`
/// and the rest have `x3 != 0`.
pub fn line_products<R: Rng + ?Sized>(rng: &mut R, n: u32, height: i64, at_infinity: u32) -> LineProducts {
    assert!(at_infinity <= n, "at most n designated intersections");
    let n = n as usize;
    loop {
        let mut lines1 = Vec::with_capacity(n);
        let mut lines2 = Vec::with_capacity(n);
        for k in 0..n {
            if k < at_infinity as usize {
                let (p1, p2) = (random_integer(rng, height), random_integer(rng, height));
                let dir = [-p2.clone(), p1.clone(), rat(0)];
                let through = |rng: &mut R| -> [Rational; 3] {
                    let (a, b) = (random_nonzero(rng, height), random_integer(rng, height));
                    [&dir[0] * &a, &dir[1] * &a, b]
                };
                lines1.push(through(rng));
                lines2.push(through(rng));
            } else {
                lines1.push(std::array::from_fn(|_| random_integer(rng, height)));
                lines2.push(std::array::from_fn(|_| random_integer(rng, height)));
            }
        }
        let mut points = Vec::with_capacity(n * n);
        for l in &lines1 {
            for m in &lines2 {
                points.push(cross(l, m));
            }
        }
        let mut ok = points.iter().all(|p| !p.iter().all(Zero::is_zero));
        for (idx, pt) in points.iter().enumerate() {
            let designated = idx % (n + 1) == 0 && idx / n < at_infinity as usize;
            ok &= pt[2].is_zero() == designated;
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                ok &= !proportional(&points[a], &points[b]);
            }
        }
        if !ok {
            continue;
        }
        let product = |ls: &[[Rational; 3]]| -> Poly {
            ls.iter().fold(Poly::one(), |acc, l| acc * Poly::linear(&X, l))
        };
        let pair = MapPair::new(product(&lines1), product(&lines2), n as u32).expect("products of n lines");
        return LineProducts { pair, lines1, lines2, points };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::det3;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(det3(&random_unimodular3(&mut rng, 5)), rat(1));
            let _ = random_group_element(&mut rng);
        }
    }

    #[test]
    fn line_products_have_designated_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let lp = line_products(&mut rng, 3, 5, 2);
        assert_eq!(lp.points.len(), 9);
        assert_eq!(lp.points.iter().filter(|p| p[2].is_zero()).count(), 2);
        for pt in &lp.points {
            let at = [(Var::X1, pt[0].clone()), (Var::X2, pt[1].clone()), (Var::X3, pt[2].clone())];
            assert!(lp.pair.f1().poly().eval(&at).is_zero());
            assert!(lp.pair.f2().poly().eval(&at).is_zero());
        }
    }
}
