use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use taut::arith::{a_g, bernoulli, c_const, rat, rat_int};
use taut::intersect::{self, alpha_pairing, faber_coeff, TopProfile};
use taut::{Rat, RatMatrix};

/// Bernoulli numbers by the Akiyama-Tanigawa algorithm (B_1 = +1/2).
fn akiyama_tanigawa(m: usize) -> Rat {
    let mut a: Vec<Rat> = (0..=m).map(|j| rat(1, j as i64 + 1)).collect();
    for k in 1..=m {
        for j in 0..=m - k {
            a[j] = rat_int(j as i64 + 1) * (a[j].clone() - a[j + 1].clone());
        }
    }
    a[0].clone()
}

fn odd_double_factorial(n: i64) -> Rat {
    (1..=n).filter(|x| x % 2 == 1).fold(Rat::one(), |acc, x| acc * rat_int(x))
}

fn fact(n: i64) -> Rat {
    (1..=n).fold(Rat::one(), |acc, x| acc * rat_int(x))
}

/// `|B_2g| / (2^{2g-1} (2g-1)!! 2g)`, the lambda_g lambda_{g-1} integral of psi^{g-1}.
fn a_g_oracle(g: i64) -> Rat {
    let b = akiyama_tanigawa(2 * g as usize).abs();
    let two = (0..2 * g - 1).fold(Rat::one(), |acc, _| acc * rat_int(2));
    b / (two * odd_double_factorial(2 * g - 1) * rat_int(2 * g))
}

#[test]
fn bernoulli_agrees_with_akiyama_tanigawa() {
    for m in (2..=40).step_by(2) {
        assert_eq!(bernoulli(m).unwrap(), akiyama_tanigawa(m as usize), "B_{m}");
    }
}

#[test]
fn a_g_agrees_with_closed_form() {
    for g in 2..=25 {
        assert_eq!(a_g(g).unwrap(), a_g_oracle(g), "A_{g}");
    }
    assert_eq!(a_g(3).unwrap(), rat(1, 120960));
    assert!(a_g(1).is_err());
}

#[test]
fn one_point_pairing_is_a_g() {
    // alpha_1 against psi^{g-1} on one point is A_g, so C(g; g-1) = 1/(2g-1)
    for g in 2..=15 {
        let p = TopProfile::new(g, vec![g - 1], vec![]).unwrap();
        assert_eq!(alpha_pairing(&p, 1).unwrap(), a_g_oracle(g));
        assert_eq!(c_const(g, &[g - 1], &[]).unwrap(), rat(1, 2 * g - 1));
    }
}

fn faber_oracle(g: i64, l: &[i64]) -> Rat {
    let n = l.len() as i64;
    let den = l.iter().fold(fact(2 * g - 1), |acc, &x| acc * odd_double_factorial(2 * x + 1));
    fact(2 * g - 3 + n) * odd_double_factorial(2 * g - 1) / den
}

fn profile() -> impl Strategy<Value = (i64, Vec<i64>, Vec<i64>)> {
    (2i64..=7, 1usize..=4, 0usize..=3).prop_flat_map(|(g, n, m)| {
        prop::collection::vec(0u32..100, n + m).prop_map(move |w| {
            // spread g-1 over n+m slots by weights
            let mut parts = vec![0i64; n + m];
            for unit in 0..(g - 1) as usize {
                let slot = w[unit % w.len()] as usize % (n + m);
                parts[slot] += 1;
            }
            (g, parts[..n].to_vec(), parts[n..].to_vec())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn faber_matches_alternate_form(g in 2i64..=9, w in prop::collection::vec(0usize..10, 1..=5)) {
        let mut l = vec![0i64; w.len()];
        for unit in 0..(g - 2) as usize {
            l[w[unit % w.len()] % w.len()] += 1;
        }
        prop_assert_eq!(faber_coeff(g, &l).unwrap(), faber_oracle(g, &l));
    }

    #[test]
    fn faber_is_symmetric(g in 2i64..=9, w in prop::collection::vec(0usize..10, 2..=5), rot in 0usize..5) {
        let mut l = vec![0i64; w.len()];
        for unit in 0..(g - 2) as usize {
            l[w[unit % w.len()] % w.len()] += 1;
        }
        let mut r = l.clone();
        r.rotate_left(rot % l.len());
        prop_assert_eq!(faber_coeff(g, &l).unwrap(), faber_coeff(g, &r).unwrap());
    }

    #[test]
    fn pairing_consistency_random((g, d, k) in profile()) {
        let p = TopProfile::new(g, d, k).unwrap();
        prop_assert!(intersect::verify_pairing_consistency(&p).unwrap());
        // the generalized top coefficients sum against psi^{g-1} integrals
        let coeffs = intersect::gen_top_coeffs(&p).unwrap();
        prop_assert_eq!(coeffs.len(), p.n());
    }
}

/// Cofactor determinant as an oracle for the closed form.
fn laplace(m: &[Vec<Rat>]) -> Rat {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rat::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].clone() * laplace(&minor);
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

#[test]
fn matrix_m_determinant_by_cofactors() {
    for g in 2..=6 {
        for n in 1..=5 {
            let m = intersect::matrix_m(g, n).unwrap();
            assert!(intersect::matrix_m_has_expected_shape(&m, g));
            assert_eq!(laplace(&m.matrix.to_rows()), m.predicted_determinant);
            assert!(intersect::determinant_formula_holds(&m));
        }
    }
    assert!(intersect::matrix_m(1, 2).is_err());
    let _ = RatMatrix::identity(1);
}

#[test]
fn string_recursion_examples() {
    assert!(intersect::faber_string_recursion_holds(3, &[-1, 2]).unwrap());
    assert!(intersect::faber_string_recursion_holds(4, &[-1, 1, 2]).unwrap());
    assert!(intersect::faber_string_recursion_holds(2, &[-1, 1]).unwrap());
    assert!(intersect::faber_string_recursion_holds(3, &[-1, -1, 3]).is_err());
}
