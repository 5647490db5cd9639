use conformal_kit::arith::{rat, Polynomial, RationalFunction};
use conformal_kit::catalog::make_b;
use conformal_kit::classification::identify::table_diff;
use conformal_kit::classification::table::{del, lam, table_of_algebra};
use conformal_kit::classification::*;
use conformal_kit::conformal::verify_axioms;

fn both() -> Vec<AlphaBranch> {
    vec![AlphaBranch::NonzeroSymbol, AlphaBranch::Value(rat(0))]
}

fn seeds(alpha: &AlphaBranch, a0: bool, inj: &DeltaInjection) -> (Vec<SeedCase>, Vec<(String, Vec<String>)>) {
    let mut cases = Vec::new();
    let mut contradictions = Vec::new();
    for o in solve_g1_minus1(alpha, a0, 6, inj).unwrap() {
        match o {
            SeedOutcome::Case(c) => cases.push(c),
            SeedOutcome::Contradiction { witness, log, .. } => contradictions.push((witness, log)),
        }
    }
    (cases, contradictions)
}

#[test]
fn full_classification_to_degree_six() {
    let r = classify_all(&both(), 6, 6).unwrap();
    assert_eq!(r.identified(), vec!["B(1,α₁)", "B(2,0)", "B(2,α₁)"]);
    let concrete: Vec<_> = r.surviving().iter().filter_map(|b| b.identified_as.clone()).collect();
    assert!(concrete.contains(&"B(1,0)".to_string()));
    let surviving = r.surviving();
    assert_eq!(surviving.len(), 4);
    for b in &surviving {
        for j in 1..=6 {
            assert_eq!(b.delta[&j], (j + 2).to_string());
        }
    }
    let symbolic: Vec<_> = surviving.iter().filter(|b| b.alpha == "α₁ ≠ 0").collect();
    assert_eq!(symbolic.len(), 2);
    assert!(symbolic.iter().all(|b| b.a0_nonzero));
}

#[test]
fn alpha_zero_reaches_two_algebras() {
    let r = classify_all(&[AlphaBranch::Value(rat(0))], 3, 6).unwrap();
    assert_eq!(r.identified(), vec!["B(1,0)", "B(2,0)"]);
}

#[test]
fn vanishing_delta_branch_dies_without_a0() {
    let r = classify_all(&[AlphaBranch::Value(rat(0))], 2, 6).unwrap();
    let dead: Vec<_> = r
        .branches
        .iter()
        .filter(|b| !b.a0_nonzero && b.params.get("Δ₋₁").map(String::as_str) == Some("0"))
        .collect();
    assert!(!dead.is_empty());
    for b in dead {
        assert_eq!(b.branch, "contradiction");
        assert!(b.witness.as_ref().unwrap().contains("g_{1,-1} = 0"));
    }
}

#[test]
fn excluded_delta_contradicts_both_sums() {
    let (cases, contradictions) = seeds(&AlphaBranch::NonzeroSymbol, true, &DeltaInjection::Excluded);
    assert!(cases.is_empty());
    let (witness, log) = &contradictions[0];
    assert!(witness.contains("(-1)*Δ₁ + (-1)*Δ₋₁ + 1 = 0"), "{witness}");
    assert!(log.iter().any(|l| l.contains("Δ₁ + Δ₋₁ + (-3) = 0")), "{log:?}");

    for inj in [DeltaInjection::Excluded, DeltaInjection::Value(rat(5))] {
        let (cases, contradictions) = seeds(&AlphaBranch::Value(rat(0)), true, &inj);
        assert!(cases.is_empty());
        assert!(!contradictions.is_empty());
    }
}

#[test]
fn gauge_choice_does_not_change_the_result() {
    for (alpha, a0) in [(AlphaBranch::NonzeroSymbol, true), (AlphaBranch::Value(rat(0)), false)] {
        for seed in seeds(&alpha, a0, &DeltaInjection::None).0 {
            let (p, _) = propagate(&alpha, &seed, 4, 3).unwrap();
            let expected = identify(&normalize(&p.table, 4).unwrap(), 4, &alpha).unwrap();
            // G_0 spans a Virasoro subalgebra, which fixes its scale.
            let c = |j: i64| RationalFunction::constant(if j == 0 { rat(1) } else { rat(2 * j + 7) / rat(j + 5) });
            let rescaled: Table = p
                .table
                .iter()
                .filter(|(&(i, j), _)| i + j >= -1)
                .map(|(&(i, j), g)| ((i, j), (g.clone() * c(i) * c(j)).checked_div(&c(i + j)).unwrap()))
                .collect();
            assert_eq!(identify(&normalize(&rescaled, 4).unwrap(), 4, &alpha).unwrap(), expected);
        }
    }
}

#[test]
fn identified_algebras_match_catalog_and_satisfy_axioms() {
    for (alpha, a0) in [(AlphaBranch::NonzeroSymbol, true), (AlphaBranch::Value(rat(0)), false)] {
        for seed in seeds(&alpha, a0, &DeltaInjection::None).0 {
            let (p, _) = propagate(&alpha, &seed, 4, 3).unwrap();
            let t = normalize(&p.table, 4).unwrap();
            let tag = identify(&t, 4, &alpha).unwrap();
            let (s, param) = tag.catalog(&alpha);
            let alg = make_b(s, param).unwrap();
            assert!(table_diff(&t, &table_of_algebra(&alg, 4).unwrap()).is_empty());
            assert!(verify_axioms(&alg, 3).unwrap().passed());
        }
    }
}

#[test]
fn first_case_grade_two() {
    let alpha = AlphaBranch::NonzeroSymbol;
    let seed = seeds(&alpha, true, &DeltaInjection::None).0.remove(0);
    assert_eq!(seed.delta_m1, rat(0));
    let (p, _) = propagate(&alpha, &seed, 3, 3).unwrap();
    assert_eq!(p.deltas[&2], rat(4));
    let g11 = &p.table[&(1, 1)];
    let scale = g11.coeff(conformal_kit::arith::Var::d(), 1).unwrap();
    let shape = RationalFunction::from_poly(lam().scale(&rat(2)) + del());
    assert!((g11.clone() - scale * shape).is_zero());
}

#[test]
fn corrupted_seed_is_rejected() {
    let alpha = AlphaBranch::NonzeroSymbol;
    let mut seed = seeds(&alpha, true, &DeltaInjection::None).0.remove(0);
    seed.g = RationalFunction::from_poly(lam() + Polynomial::int(1));
    assert!(propagate(&alpha, &seed, 3, 3).is_err());
}

#[test]
fn grading_caveat_is_recorded() {
    let g = derive_grading_constants(6).unwrap();
    assert!(g.forcing_pairs.contains(&(-1, 6)));
    assert_eq!(g.alpha_ratio[&6], "6");
    assert!(!g.caveat.is_empty());
}
