use std::collections::BTreeMap;

use proptest::prelude::*;
use taut::arith::rat_int;
use taut::{Rat, RatPoly};

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 3), -5i64..=5), 0..5).prop_map(|terms| {
        RatPoly::from_terms(
            terms.into_iter().map(|(e, c)| (VARS.iter().copied().zip(e).collect::<Vec<_>>(), rat_int(c))),
        )
    })
}

fn point() -> impl Strategy<Value = BTreeMap<String, Rat>> {
    prop::collection::vec(-4i64..=4, 3)
        .prop_map(|v| VARS.iter().zip(v).map(|(n, x)| (n.to_string(), rat_int(x))).collect())
}

fn eval(p: &RatPoly, at: &BTreeMap<String, Rat>) -> Rat {
    p.evaluate(at).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert!(a.add(&b).same_as(&b.add(&a)));
        prop_assert!(a.mul(&b).same_as(&b.mul(&a)));
        prop_assert!(a.mul(&b).mul(&c).same_as(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).same_as(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.mul(&RatPoly::one()).same_as(&a));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), at in point()) {
        prop_assert_eq!(eval(&a.mul(&b), &at), eval(&a, &at) * eval(&b, &at));
        prop_assert_eq!(eval(&a.add(&b), &at), eval(&a, &at) + eval(&b, &at));
        prop_assert_eq!(eval(&a.pow(3), &at), eval(&a, &at) * eval(&a, &at) * eval(&a, &at));
    }

    #[test]
    fn substitution_commutes_with_evaluation(a in poly(), s in poly(), at in point()) {
        let sub = a.with_vars(VARS).substitute(&BTreeMap::from([("x".to_string(), s.clone())])).unwrap();
        let mut moved = at.clone();
        moved.insert("x".into(), eval(&s, &at));
        prop_assert_eq!(eval(&sub, &at), eval(&a, &moved));
    }
}

#[test]
fn homogeneity_and_degree() {
    let (x, y) = (RatPoly::var("x"), RatPoly::var("y"));
    let p = x.add(&y).pow(4);
    assert!(p.is_homogeneous(&["x", "y"], 4));
    assert_eq!(p.num_terms(), 5);
    assert_eq!(p.total_degree(), Some(4));
    assert!(p.coeff_of(&[("x", 2), ("y", 2)]).unwrap().same_as(&RatPoly::constant(rat_int(6))));
    assert!(!p.add(&x).is_homogeneous(&["x", "y"], 4));
    assert!(p.evaluate(&BTreeMap::new()).is_err());
}
