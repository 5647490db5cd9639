use std::collections::BTreeMap;

use conformal_kit::arith::{frac, Monomial, Polynomial, Var};
use conformal_kit::catalog::make_b;
use conformal_kit::conformal::{all_products, bracket, from_products, Element, GeneratorId, Param};
use proptest::prelude::*;

fn poly(vars: &'static [&'static str]) -> impl Strategy<Value = Polynomial> {
    let term = (-6i64..=6, 1i64..=3, prop::collection::vec(0u32..=2, vars.len()));
    prop::collection::vec(term, 0..5).prop_map(move |ts| {
        Polynomial::from_terms(ts.into_iter().map(|(n, d, es)| {
            let m = Monomial::from_pairs(vars.iter().zip(es).map(|(v, e)| (Var::new(v), e)));
            (m, frac(n, d))
        }))
    })
}

fn element(max_index: i64) -> impl Strategy<Value = Element> {
    prop::collection::vec((-1..=max_index, poly(&["d"])), 1..3).prop_map(|ts| {
        Element::from_terms(ts.into_iter().map(|(i, p)| (GeneratorId::g(i), p)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_and_substitution(a in poly(&["x", "y"]), b in poly(&["x", "y"]), c in poly(&["x", "y"]), s in poly(&["y", "z"])) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        let mut at = BTreeMap::new();
        at.insert(Var::new("x"), s);
        let sub = |p: &Polynomial| p.substitute(&at);
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_sesquilinear_and_products_rebuild_it(x in element(2), y in element(2)) {
        let alg = make_b(2, Param::symbolic_alpha()).unwrap();
        let l = Polynomial::var(Var::l());
        let d = Polynomial::var(Var::d());
        let xy = bracket(&alg, &x, &y).unwrap();
        // [∂a λ b] = -λ [a λ b],  [a λ ∂b] = (λ + ∂) [a λ b]
        prop_assert_eq!(bracket(&alg, &x.apply_d(), &y).unwrap(), xy.mul_poly(&-&l));
        prop_assert_eq!(bracket(&alg, &x, &y.apply_d()).unwrap(), xy.mul_poly(&(&l + &d)));
        prop_assert_eq!(from_products(&all_products(&alg, &x, &y).unwrap()), xy);
    }
}
