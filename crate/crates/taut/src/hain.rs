//! Hain's formula for DR cycles on the rational-tails space, expanded in the
//! free commutative ring on psi-dagger classes and boundary divisors D_J.
//! No relations among the generators are imposed.

use std::collections::BTreeMap;

use num_traits::One;

use crate::arith::{factorial, rat, rat_int};
use crate::error::{domain, Result};
use crate::{Rat, RatPoly};

pub fn a_var(i: usize) -> String {
    format!("a{i}")
}

pub fn psi_var(i: usize) -> String {
    format!("psi{i}")
}

/// Name of the divisor variable for a sorted subset of `1..=n`.
pub fn d_var(j: &[usize]) -> String {
    let parts: Vec<String> = j.iter().map(|x| x.to_string()).collect();
    format!("D{{{}}}", parts.join(","))
}

/// Subsets of `1..=n` with at least two elements, in lexicographic order of
/// their bitmask.
pub fn divisor_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// Multiplicities, either numeric (summing to zero) or the free variables
/// `a1..an`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicities {
    Numeric(Vec<i64>),
    Symbolic,
}

fn a_polys(n: usize, a: &Multiplicities) -> Result<Vec<RatPoly>> {
    match a {
        Multiplicities::Numeric(v) => {
            if v.len() != n {
                return domain(format!("expected {n} multiplicities, got {}", v.len()));
            }
            if v.iter().sum::<i64>() != 0 {
                return domain(format!("multiplicities {v:?} do not sum to zero"));
            }
            Ok(v.iter().map(|&x| RatPoly::constant(rat_int(x))).collect())
        }
        Multiplicities::Symbolic => Ok((1..=n).map(|i| RatPoly::var(&a_var(i))).collect()),
    }
}

/// `sum_i a_i^2 psi_i / 2 - sum_J (sum_{i<j in J} a_i a_j) D_J`.
pub fn hain_base(n: usize, a: &Multiplicities) -> Result<RatPoly> {
    if n < 2 {
        return domain(format!("Hain's formula needs n >= 2, got {n}"));
    }
    let av = a_polys(n, a)?;
    let half = RatPoly::constant(rat(1, 2));
    let mut out = RatPoly::zero();
    for i in 1..=n {
        out = out.add(&av[i - 1].pow(2).mul(&half).mul(&RatPoly::var(&psi_var(i))));
    }
    for j in divisor_subsets(n) {
        let mut s = RatPoly::zero();
        for (x, &p) in j.iter().enumerate() {
            for &q in &j[x + 1..] {
                s = s.add(&av[p - 1].mul(&av[q - 1]));
            }
        }
        out = out.sub(&s.mul(&RatPoly::var(&d_var(&j))));
    }
    Ok(out)
}

/// Expanded class `(1/g!) base^g` with its parameters.
#[derive(Clone, Debug)]
pub struct RtClass {
    pub g: u32,
    pub n: usize,
    pub poly: RatPoly,
}

pub fn hain_class(g: u32, n: usize, a: &Multiplicities) -> Result<RtClass> {
    if g < 1 {
        return domain("Hain's formula needs g >= 1");
    }
    let base = hain_base(n, a)?;
    let poly = base.pow(g).scale(&(Rat::one() / Rat::from_integer(factorial(g as u64))));
    Ok(RtClass { g, n, poly })
}

/// Generator names of the `n`-point context that are not multiplicities.
pub fn generator_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(psi_var).collect();
    v.extend(divisor_subsets(n).iter().map(|j| d_var(j)));
    v
}

/// Pullback along the map forgetting point `n`: `D_J -> D_J + D_{J u {n}}`,
/// psi-dagger classes and multiplicity variables unchanged.
pub fn forgetful_pullback(p: &RatPoly, n: usize) -> Result<RatPoly> {
    let mut map = BTreeMap::new();
    for j in divisor_subsets(n - 1) {
        let name = d_var(&j);
        if !p.vars().contains(&name) {
            continue;
        }
        let mut big = j.clone();
        big.push(n);
        map.insert(name.clone(), RatPoly::var(&name).add(&RatPoly::var(&d_var(&big))));
    }
    p.substitute(&map)
}

fn set_last_zero(p: &RatPoly, n: usize) -> Result<RatPoly> {
    let name = a_var(n);
    if !p.vars().contains(&name) {
        return Ok(p.clone());
    }
    p.substitute(&BTreeMap::from([(name, RatPoly::zero())]))
}

/// Setting `a_n = 0` in the n-point base equals the pullback of the
/// (n-1)-point base.
pub fn restriction_identity(n: usize) -> Result<bool> {
    if n < 3 {
        return domain(format!("restriction identity needs n >= 3, got {n}"));
    }
    let lhs = set_last_zero(&hain_base(n, &Multiplicities::Symbolic)?, n)?;
    let rhs = forgetful_pullback(&hain_base(n - 1, &Multiplicities::Symbolic)?, n)?;
    Ok(lhs.same_as(&rhs))
}

/// The same identity for the full class `(1/g!) base^g`.
pub fn class_restriction_identity(g: u32, n: usize) -> Result<bool> {
    if n < 3 {
        return domain(format!("restriction identity needs n >= 3, got {n}"));
    }
    let lhs = set_last_zero(&hain_class(g, n, &Multiplicities::Symbolic)?.poly, n)?;
    let rhs = forgetful_pullback(&hain_class(g, n - 1, &Multiplicities::Symbolic)?.poly, n)?;
    Ok(lhs.same_as(&rhs))
}

/// Symbolic class is homogeneous of degree `2g` in the multiplicities and
/// of degree `g` in the generators.
pub fn homogeneity_holds(c: &RtClass) -> bool {
    let avars: Vec<String> = (1..=c.n).map(a_var).collect();
    let gens = generator_names(c.n);
    let ar: Vec<&str> = avars.iter().map(String::as_str).collect();
    let gr: Vec<&str> = gens.iter().map(String::as_str).collect();
    !c.poly.is_zero() && c.poly.is_homogeneous(&ar, 2 * c.g) && c.poly.is_homogeneous(&gr, c.g)
}

/// `hain_class(g, n, lambda a) == lambda^{2g} hain_class(g, n, a)`.
pub fn scaling_holds(g: u32, a: &[i64], lambda: i64) -> Result<bool> {
    let n = a.len();
    let base = hain_class(g, n, &Multiplicities::Numeric(a.to_vec()))?.poly;
    let scaled: Vec<i64> = a.iter().map(|x| lambda * x).collect();
    let lhs = hain_class(g, n, &Multiplicities::Numeric(scaled))?.poly;
    let mut f = Rat::one();
    for _ in 0..2 * g {
        f *= rat_int(lambda);
    }
    Ok(lhs.same_as(&base.scale(&f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> RatPoly {
        RatPoly::var(s)
    }

    fn sub_t(p: &RatPoly, vals: &[(usize, i64)]) -> RatPoly {
        let t = v("t");
        let map = vals.iter().map(|&(i, c)| (a_var(i), t.scale(&rat_int(c)))).collect();
        p.substitute(&map).unwrap()
    }

    #[test]
    fn base_two_points() {
        let b = hain_base(2, &Multiplicities::Symbolic).unwrap();
        let got = sub_t(&b, &[(1, 1), (2, -1)]);
        let t2 = v("t").pow(2);
        let want = t2.mul(&v("psi1").add(&v("psi2"))).scale(&rat(1, 2)).add(&t2.mul(&v("D{1,2}")));
        assert!(got.same_as(&want));
        assert!(hain_base(2, &Multiplicities::Numeric(vec![0, 0])).unwrap().is_zero());
        assert!(hain_base(2, &Multiplicities::Numeric(vec![1, 1])).is_err());
    }

    #[test]
    fn base_three_points() {
        let b = hain_base(3, &Multiplicities::Numeric(vec![1, 1, -2])).unwrap();
        // three psi terms and D_12, D_13, D_23, D_123
        assert_eq!(b.num_terms(), 7);
        let c = b.coeff_of(&[("D{1,2}", 1)]).unwrap();
        assert!(c.same_as(&RatPoly::constant(rat_int(-1))));
    }

    #[test]
    fn class_genus_two() {
        let c = hain_class(2, 2, &Multiplicities::Numeric(vec![1, -1])).unwrap().poly;
        let (p1, p2, d) = (v("psi1"), v("psi2"), v("D{1,2}"));
        let want = p1
            .pow(2)
            .scale(&rat(1, 8))
            .add(&p1.mul(&p2).scale(&rat(1, 4)))
            .add(&p2.pow(2).scale(&rat(1, 8)))
            .add(&p1.mul(&d).scale(&rat(1, 2)))
            .add(&p2.mul(&d).scale(&rat(1, 2)))
            .add(&d.pow(2).scale(&rat(1, 2)));
        assert!(c.same_as(&want));
    }

    #[test]
    fn genus_one_is_base() {
        let c = hain_class(1, 2, &Multiplicities::Symbolic).unwrap().poly;
        assert!(c.same_as(&hain_base(2, &Multiplicities::Symbolic).unwrap()));
    }

    #[test]
    fn pullback_examples() {
        let p = v("D{1,2}");
        let q = forgetful_pullback(&p, 3).unwrap();
        assert!(q.same_as(&v("D{1,2}").add(&v("D{1,2,3}"))));
        assert!(forgetful_pullback(&v("psi1"), 3).unwrap().same_as(&v("psi1")));
        let one = RatPoly::constant(rat_int(7));
        assert!(forgetful_pullback(&one, 3).unwrap().same_as(&one));
    }

    #[test]
    fn restriction_small() {
        for n in 3..=5 {
            assert!(restriction_identity(n).unwrap());
        }
        assert!(restriction_identity(2).is_err());
        assert!(class_restriction_identity(2, 3).unwrap());
    }

    #[test]
    fn homogeneity_small() {
        let c = hain_class(2, 3, &Multiplicities::Symbolic).unwrap();
        assert!(homogeneity_holds(&c));
        assert!(scaling_holds(2, &[1, 2, -3], 3).unwrap());
    }
}
