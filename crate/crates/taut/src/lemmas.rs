//! Brute-force checks of the three linear-system lemmas: build each system
//! explicitly, compute its kernel exactly and compare with the closed-form
//! solution family.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{rat, rat_int};
use crate::{Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub parameter: i64,
    pub nullspace_dim: usize,
    pub expected_dim: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// `u = c v` for some nonzero `c`; both zero vectors count as proportional.
pub fn proportional(u: &[Rat], v: &[Rat]) -> bool {
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return u.iter().all(Zero::is_zero);
    };
    if u[k].is_zero() {
        return false;
    }
    let c = u[k].clone() / &v[k];
    u.iter().zip(v).all(|(a, b)| *a == c.clone() * b)
}

/// Matrix of a system given as sparse rows over `nvars` unknowns.
fn system(rows: Vec<BTreeMap<usize, Rat>>, nvars: usize) -> RatMatrix {
    RatMatrix::from_fn(rows.len(), nvars, |i, j| rows[i].get(&j).cloned().unwrap_or_else(Rat::zero))
}

fn bump(row: &mut BTreeMap<usize, Rat>, var: usize, c: Rat) {
    *row.entry(var).or_insert_with(Rat::zero) += c;
}

/// `x_{l1} + x_{l2} + x_{l3} = 0` for positive `l1 + l2 + l3 = p`; unknowns
/// `x_1..x_{p-2}`. Expected kernel: `x_i = (i/p - 1/3) alpha`.
pub fn lemma51_check(p: i64) -> LemmaReport {
    assert!(p >= 3, "lemma51 needs p >= 3");
    let nv = (p - 2) as usize;
    let mut rows = Vec::new();
    for l1 in 1..=p {
        for l2 in l1..=p {
            let l3 = p - l1 - l2;
            if l3 < l2 {
                continue;
            }
            let mut row = BTreeMap::new();
            for l in [l1, l2, l3] {
                bump(&mut row, (l - 1) as usize, Rat::one());
            }
            rows.push(row);
        }
    }
    let ns = system(rows, nv).nullspace();
    let family: Vec<Rat> = (1..=p - 2).map(|i| rat(i, p) - rat(1, 3)).collect();
    let expected = usize::from(family.iter().any(|x| !x.is_zero()));
    let matches = ns.len() == expected && ns.first().is_none_or(|v| proportional(v, &family));
    LemmaReport {
        lemma: "lemma51".into(),
        parameter: p,
        nullspace_dim: ns.len(),
        expected_dim: expected,
        matches,
        notes: vec![],
    }
}

/// Index of `v_{i,j,k}` with `i + j + k = d` in lexicographic order.
fn triples(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for i in 1..d {
        for j in 1..d - i {
            out.push((i, j, d - i - j));
        }
    }
    out
}

/// The two equation families on `v_{i,j,k}`. Expected kernel: zero for
/// `d = 3, 4`; otherwise spanned by `(i/(d-1) - 1/3)(delta_{k,1} - delta_{j,1}/k)`.
pub fn lemma53_check(d: i64) -> LemmaReport {
    assert!(d >= 3, "lemma53 needs d >= 3");
    let vars = triples(d);
    let idx: BTreeMap<(i64, i64, i64), usize> = vars.iter().enumerate().map(|(n, t)| (*t, n)).collect();
    let mut rows = Vec::new();
    for a in 1..d {
        for b1 in 1..d {
            for b2 in b1..d {
                let b3 = d - a - b1 - b2;
                if b3 < b2 {
                    continue;
                }
                let b = [b1, b2, b3];
                let mut row = BTreeMap::new();
                for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                    bump(&mut row, idx[&(b[k], b[i] + b[j], a)], Rat::one());
                }
                rows.push(row);
            }
        }
    }
    for &(i, j, k) in &vars {
        let mut row = BTreeMap::new();
        bump(&mut row, idx[&(i, j, k)], rat_int(k));
        bump(&mut row, idx[&(i, k, j)], rat_int(j));
        rows.push(row);
    }
    let ns = system(rows, vars.len()).nullspace();
    let family: Vec<Rat> = vars
        .iter()
        .map(|&(i, j, k)| {
            let dk = if k == 1 { Rat::one() } else { Rat::zero() };
            let dj = if j == 1 { rat(1, k) } else { Rat::zero() };
            (rat(i, d - 1) - rat(1, 3)) * (dk - dj)
        })
        .collect();
    let expected = if d <= 4 { 0 } else { 1 };
    let family_ok = expected == 0 || family.iter().any(|x| !x.is_zero());
    let matches = family_ok && ns.len() == expected && ns.first().is_none_or(|v| proportional(v, &family));
    LemmaReport {
        lemma: "lemma53".into(),
        parameter: d,
        nullspace_dim: ns.len(),
        expected_dim: expected,
        matches,
        notes: vec![],
    }
}

/// Pairs `(i, j)` with `i, j >= 1`, `i + j <= bound`, ordered by `i + j` then `i`.
fn pairs(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for s in 2..=bound {
        for i in 1..s {
            out.push((i, s - i));
        }
    }
    out
}

/// A linear form over the unknowns `v_{i,j}`.
type Form = BTreeMap<(i64, i64), Rat>;

fn add_form(acc: &mut Form, f: &Form, c: &Rat) {
    for (k, x) in f {
        let e = acc.entry(*k).or_insert_with(Rat::zero);
        *e += x.clone() * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// Equations of the two-family system on `v_{i,j}`, `z_{i,j} = -v_{i,j} - v_{j,i}`,
/// restricted to unknowns with `i + j <= bound`.
pub fn lemma52_equations(bound: i64) -> Vec<Form> {
    let v = |i: i64, j: i64| Form::from([((i, j), Rat::one())]);
    let z = |i: i64, j: i64| {
        let mut f = Form::new();
        add_form(&mut f, &v(i, j), &-Rat::one());
        add_form(&mut f, &v(j, i), &-Rat::one());
        f
    };
    let one = Rat::one();
    let mut eqs = Vec::new();
    for a1 in 1..=bound {
        for a2 in a1..=bound {
            for a3 in a2..=bound {
                if a1 + a2 + a3 > bound {
                    continue;
                }
                let a = [a1, a2, a3];
                let mut f = Form::new();
                for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
                    add_form(&mut f, &v(a[k], a[i] + a[j]), &one);
                    add_form(&mut f, &z(a[i], a[j]), &one);
                }
                eqs.push(f);
            }
        }
    }
    for s in 2..=bound {
        for a1 in 1..s {
            for c1 in 1..s {
                let (a2, c2) = (s - a1, s - c1);
                if (a1, a2) >= (c1, c2) {
                    continue;
                }
                let mut f = Form::new();
                add_form(&mut f, &z(a1, a2), &one);
                add_form(&mut f, &z(c1, c2), &-one.clone());
                for ai in [a1, a2] {
                    for cj in [c1, c2] {
                        if ai > cj {
                            add_form(&mut f, &v(cj, ai - cj), &-one.clone());
                        }
                        if cj > ai {
                            add_form(&mut f, &v(ai, cj - ai), &one);
                        }
                    }
                }
                eqs.push(f);
            }
        }
    }
    eqs.retain(|f| !f.is_empty());
    eqs
}

/// Closed-form `v_{i,j}` as a combination of `alpha_2, alpha_3, ...` with
/// `alpha_1 = 0`, keyed by the alpha index.
fn solution_form(i: i64, j: i64) -> BTreeMap<i64, Rat> {
    let mut f = BTreeMap::new();
    let mut put = |k: i64, c: Rat| {
        if k >= 2 {
            *f.entry(k).or_insert_with(Rat::zero) += c;
        }
    };
    put(i + j, rat(i, i + j) - rat(1, 3));
    put(i, rat(1, 3) - rat(i + j, i));
    put(j, rat(1, 3));
    f.retain(|_, c| !c.is_zero());
    f
}

/// Substitutes the closed form into every equation and checks exact
/// cancellation in the formal alphas.
pub fn lemma52_symbolic(bound: i64) -> bool {
    lemma52_equations(bound).iter().all(|eq| {
        let mut acc: BTreeMap<i64, Rat> = BTreeMap::new();
        for (&(i, j), c) in eq {
            for (k, x) in solution_form(i, j) {
                *acc.entry(k).or_insert_with(Rat::zero) += x * c;
            }
        }
        acc.values().all(Zero::is_zero)
    })
}

/// Runs the inductive construction of the alphas on a solution and checks
/// that the closed form reproduces every `v_{i,j}`.
pub fn lemma52_reconstruct(v: &BTreeMap<(i64, i64), Rat>, bound: i64) -> bool {
    let mut alpha: BTreeMap<i64, Rat> = BTreeMap::from([(1, Rat::zero())]);
    alpha.insert(2, v[&(1, 1)].clone() * rat_int(6));
    for d in 3..=bound {
        let tilde = |i: i64| {
            let j = d - i;
            v[&(i, j)].clone() - (rat(1, 3) - rat(d, i)) * &alpha[&i] - rat(1, 3) * &alpha[&j]
        };
        let ad = if d == 3 { tilde(2) * rat_int(3) } else { tilde(1) / (rat(1, d) - rat(1, 3)) };
        alpha.insert(d, ad);
    }
    pairs(bound).into_iter().all(|(i, j)| {
        let pred = (rat(i, i + j) - rat(1, 3)) * &alpha[&(i + j)]
            + (rat(1, 3) - rat(i + j, i)) * &alpha[&i]
            + rat(1, 3) * &alpha[&j];
        pred == v[&(i, j)]
    })
}

/// Both routes: symbolic cancellation, and reconstruction of a random
/// kernel element of the explicit system. Expected kernel dimension is
/// `bound - 1` (one free alpha per degree `2..=bound`).
pub fn lemma52_check(bound: i64, seed: u64) -> LemmaReport {
    assert!(bound >= 3, "lemma52 needs bound >= 3");
    let vars = pairs(bound);
    let idx: BTreeMap<(i64, i64), usize> = vars.iter().enumerate().map(|(n, p)| (*p, n)).collect();
    let rows: Vec<BTreeMap<usize, Rat>> =
        lemma52_equations(bound).into_iter().map(|f| f.into_iter().map(|(k, c)| (idx[&k], c)).collect()).collect();
    let ns = system(rows, vars.len()).nullspace();
    let symbolic = lemma52_symbolic(bound);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sol = vec![Rat::zero(); vars.len()];
    for basis in &ns {
        let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        for (s, b) in sol.iter_mut().zip(basis) {
            *s += c.clone() * b;
        }
    }
    let v: BTreeMap<(i64, i64), Rat> = vars.iter().copied().zip(sol).collect();
    let constructive = lemma52_reconstruct(&v, bound);
    let expected = (bound - 1) as usize;
    let matches = symbolic && constructive && ns.len() == expected;
    LemmaReport {
        lemma: "lemma52".into(),
        parameter: bound,
        nullspace_dim: ns.len(),
        expected_dim: expected,
        matches,
        notes: vec![format!("symbolic={symbolic}"), format!("constructive={constructive}")],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma51_small() {
        let r3 = lemma51_check(3);
        assert_eq!((r3.nullspace_dim, r3.matches), (0, true));
        let r4 = lemma51_check(4);
        assert_eq!(r4.nullspace_dim, 1);
        // hand solution of 2 x_1 + x_2 = 0 is proportional to (-1/12, 1/6)
        let ns = system(vec![BTreeMap::from([(0, rat_int(2)), (1, rat_int(1))])], 2).nullspace();
        assert!(proportional(&ns[0], &[rat(-1, 12), rat(1, 6)]));
        assert!(r4.matches);
        assert!(lemma51_check(10).matches);
    }

    #[test]
    fn lemma53_small() {
        assert_eq!(lemma53_check(3).nullspace_dim, 0);
        assert_eq!(lemma53_check(4).nullspace_dim, 0);
        let r = lemma53_check(7);
        assert_eq!(r.nullspace_dim, 1);
        assert!(r.matches);
    }

    #[test]
    fn lemma52_small() {
        let r = lemma52_check(6, 1);
        assert!(r.matches, "{r:?}");
    }

    #[test]
    fn alpha_two_is_six_v11() {
        // the closed form at (1,1) is alpha_2 / 6
        assert_eq!(solution_form(1, 1), BTreeMap::from([(2, rat(1, 6))]));
    }
}
