use conformal_kit::catalog::{make_b, make_gc1, make_virasoro};
use conformal_kit::conformal::{verify_axioms, Element, GeneratorId, Param};
use conformal_kit::arith::{Polynomial, Var};

#[test]
fn catalog_algebras_satisfy_axioms() {
    for s in [1, 2] {
        let b = make_b(s, Param::symbolic_alpha()).unwrap();
        let r = verify_axioms(&b, 3).unwrap();
        assert!(r.passed(), "B({s}): {:?}", r.failures);
    }
    assert!(verify_axioms(&make_virasoro(), 0).unwrap().passed());
    assert!(verify_axioms(&make_gc1(), 4).unwrap().passed());
}

#[test]
fn broken_table_is_caught() {
    let b = make_b(2, Param::symbolic_alpha()).unwrap();
    let wrong = Element::term(GeneratorId::g(1), Polynomial::var(Var::d()));
    let r = verify_axioms(&b.with_override(0, 1, wrong), 2).unwrap();
    assert!(!r.passed());
}
