use proptest::prelude::*;
use taut::arith::rat_int;
use taut::dr::{self, normalize, psi1_mul_raw, running_point_formal, Normalized, ZeroReason};
use taut::{vz, RatSubspace, TautVector};

fn nz(m: i64) -> impl Strategy<Value = i64> {
    (1..=m, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x })
}

/// `(g, marked, forgotten)` with nonzero entries summing to zero.
fn raw_symbol() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>)> {
    (2u32..=4, 1usize..=3, 1usize..=3).prop_flat_map(|(g, n, k)| {
        (prop::collection::vec(nz(6), n), prop::collection::vec(nz(6), k)).prop_filter_map(
            "sum zero",
            move |(m, mut f)| {
                let s: i64 = m.iter().chain(&f).sum();
                let last = f.last_mut().unwrap();
                *last -= s;
                (*last != 0).then_some((g, m, f))
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_idempotent_and_sign_invariant((g, m, f) in raw_symbol()) {
        let n = normalize(g, &m, &f).unwrap();
        let nm: Vec<i64> = m.iter().map(|x| -x).collect();
        let nf: Vec<i64> = f.iter().map(|x| -x).collect();
        prop_assert_eq!(normalize(g, &nm, &nf).unwrap(), n.clone());
        let mut rf = f.clone();
        rf.reverse();
        prop_assert_eq!(normalize(g, &m, &rf).unwrap(), n.clone());
        match n {
            Normalized::Symbol(s) => {
                prop_assert!(f.len() <= g as usize);
                prop_assert_eq!(normalize(g, &s.marked, &s.forgotten).unwrap(), Normalized::Symbol(s.clone()));
            }
            Normalized::Zero(r) => prop_assert_eq!(r, ZeroReason::TooManyForgotten),
        }
    }

    #[test]
    fn psi1_is_sign_and_order_invariant((g, m, f) in raw_symbol()) {
        prop_assume!(f.len() <= g as usize + 1);
        let v = psi1_mul_raw(g, &m, &f).unwrap();
        let nm: Vec<i64> = m.iter().map(|x| -x).collect();
        let nf: Vec<i64> = f.iter().map(|x| -x).collect();
        prop_assert_eq!(psi1_mul_raw(g, &nm, &nf).unwrap(), v.clone());
        let mut rf = f.clone();
        rf.rotate_left(1);
        prop_assert_eq!(psi1_mul_raw(g, &m, &rf).unwrap(), v.clone());
        // psi_1 lowers the number of forgotten points by one
        prop_assert!(v.labels().all(|s| s.k() + 1 == f.len()));
    }

    #[test]
    fn psi1_at_top_degree_integrates_to_zero(g in 2u32..=4, seed in prop::collection::vec(nz(6), 7)) {
        let b: Vec<i64> = seed[..=g as usize].to_vec();
        let a0 = seed[6];
        let last = -(b.iter().sum::<i64>() + a0);
        prop_assume!(last != 0);
        prop_assert!(dr::intpsi_top_vanishing(g, &[a0, last], &b).unwrap());
    }
}

/// Span of the three-forgotten running points read off from the symbols of
/// `vs`, with the rotating point at every marked position, plus
/// symmetrizations.
fn relation_span(g: u32, vs: &[&TautVector]) -> RatSubspace<dr::DrSymbol> {
    let mut sp = vz::symmetrization_span(vs).unwrap();
    for v in vs {
        for s in v.labels() {
            for p in 0..s.n() {
                let mut rot = vec![s.marked[p]];
                rot.extend(&s.forgotten);
                let rest: Vec<i64> = s.marked.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &x)| x).collect();
                if let Ok(rp) = running_point_formal(g, &rot, &rest, p) {
                    sp.insert_vec(&rp);
                }
            }
        }
    }
    sp
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// psi_1 times the four-point running point agrees with the basic
    /// relation up to running points and symmetrizations.
    #[test]
    fn basic_relation_from_running_point(g in 3u32..=4, b in prop::collection::vec(nz(4), 3), a in prop::collection::vec(nz(4), 0..=2)) {
        let b4 = -(b.iter().sum::<i64>() + a.iter().sum::<i64>());
        prop_assume!(b4 != 0);
        let bb = [b[0], b[1], b[2]];
        let lhs = dr::psi1_vec(&running_point_formal(g, &[b[0], b[1], b[2], b4], &a, 0).unwrap()).unwrap();
        let basic = vz::basic_relation(g, &bb, b4, &a).unwrap();
        let diff = &lhs - &basic;
        prop_assert!(relation_span(g, &[&diff, &lhs, &basic]).contains_vec(&diff));
    }
}

#[test]
fn running_point_domain() {
    assert!(dr::running_point_at(2, &[1, 1, -2], &[], 0).is_err());
    assert!(running_point_formal(2, &[1, 1, -2], &[], 0).is_ok());
    assert!(dr::running_point_at(2, &[1, 2], &[-3], 2).is_err());
    let v = dr::running_point(2, &[1, 2], &[-3]).unwrap();
    assert!(!v.is_empty());
}

#[test]
fn top_value_examples() {
    let s = normalize(2, &[-3], &[1, 2]).unwrap().symbol().unwrap();
    assert_eq!(dr::top_value(&s).unwrap(), rat_int(2 * 4));
    let t = normalize(3, &[-3], &[1, 2]).unwrap().symbol().unwrap();
    assert!(dr::top_value(&t).is_err());
}

#[test]
fn zero_rules() {
    assert_eq!(normalize(2, &[1, -1], &[]).unwrap(), Normalized::Zero(ZeroReason::NoForgotten));
    assert_eq!(normalize(2, &[2, -1], &[1, -1, -1]).unwrap(), Normalized::Zero(ZeroReason::TooManyForgotten));
    assert_eq!(normalize(2, &[1, -1], &[0]).unwrap(), Normalized::Zero(ZeroReason::ZeroForgotten));
    assert!(normalize(2, &[1], &[1]).is_err());
    assert!(psi1_mul_raw(2, &[-3], &[1, 1, 1]).unwrap().is_empty());
}
