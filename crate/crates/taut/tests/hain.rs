use std::collections::BTreeMap;

use proptest::prelude::*;
use taut::arith::rat_int;
use taut::hain::{self, a_var, hain_base, hain_class, Multiplicities};
use taut::{Rat, RatPoly};

fn multiplicities() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..=3).prop_map(|mut v| {
        let s: i64 = v.iter().sum();
        v.push(-s);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The numeric class is the symbolic class with the multiplicities
    /// substituted.
    #[test]
    fn numeric_is_symbolic_specialized(g in 1u32..=3, a in multiplicities()) {
        let n = a.len();
        let symbolic = hain_class(g, n, &Multiplicities::Symbolic).unwrap().poly;
        let map: BTreeMap<String, RatPoly> =
            (1..=n).map(|i| (a_var(i), RatPoly::constant(rat_int(a[i - 1])))).collect();
        let numeric = hain_class(g, n, &Multiplicities::Numeric(a.clone())).unwrap().poly;
        prop_assert!(symbolic.substitute(&map).unwrap().same_as(&numeric));
    }

    #[test]
    fn scaling(g in 1u32..=3, a in multiplicities(), lambda in -3i64..=3) {
        prop_assert!(hain::scaling_holds(g, &a, lambda).unwrap());
    }
}

#[test]
fn class_is_power_of_base() {
    let base = hain_base(3, &Multiplicities::Symbolic).unwrap();
    let c = hain_class(3, 3, &Multiplicities::Symbolic).unwrap().poly;
    assert!(c.same_as(&base.pow(3).scale(&(Rat::from_integer(1.into()) / rat_int(6)))));
}

#[test]
fn restriction_and_homogeneity() {
    for n in 3..=6 {
        assert!(hain::restriction_identity(n).unwrap());
    }
    for (g, n) in [(2, 3), (2, 4), (3, 3)] {
        assert!(hain::class_restriction_identity(g, n).unwrap());
    }
    for g in 1..=3 {
        for n in 2..=4 {
            assert!(hain::homogeneity_holds(&hain_class(g, n, &Multiplicities::Symbolic).unwrap()));
        }
    }
}

#[test]
fn domain_errors() {
    assert!(hain_base(1, &Multiplicities::Symbolic).is_err());
    assert!(hain_class(0, 2, &Multiplicities::Symbolic).is_err());
    assert!(hain_base(3, &Multiplicities::Numeric(vec![1, 2])).is_err());
}
