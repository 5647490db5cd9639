//! One line per acceptance criterion, at exact (zero) tolerance.
//!
//! Run with `cargo test --test acceptance -- --nocapture --test-threads 1`.

use conformal_kit::annihilation::{check_block_closed_form, check_lie_axioms, modes_up_to};
use conformal_kit::arith::{frac, rat, Polynomial, Rational, Var};
use conformal_kit::catalog::{make_b, make_gc1, make_virasoro};
use conformal_kit::classification::identify::table_diff;
use conformal_kit::classification::table::table_of_algebra;
use conformal_kit::classification::*;
use conformal_kit::conformal::{all_products, bracket, from_products, verify_axioms, ConformalAlgebra, Element, GeneratorId, Param};
use conformal_kit::obstruction::*;
use conformal_kit::structure::ideal::random_element;
use conformal_kit::structure::iso::solve_b0;
use conformal_kit::structure::nilpotent::Parameters;
use conformal_kit::structure::{abelian_control, is_simple_truncated, iso_rigidity_solve, locally_nilpotent_test};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(n: u32, passed: bool, detail: String) {
    println!("criterion {n:>2}: {} {detail}", if passed { "PASS" } else { "FAIL" });
}

fn grid_alphas() -> Vec<Rational> {
    vec![rat(0), rat(1), rat(-2), frac(1, 2)]
}

fn both_b(alpha: Param) -> [ConformalAlgebra; 2] {
    [make_b(1, alpha.clone()).unwrap(), make_b(2, alpha).unwrap()]
}

#[test]
fn criterion_01_axioms() {
    let mut runs = vec![(make_virasoro(), 6)];
    runs.extend(both_b(Param::symbolic_alpha()).into_iter().map(|a| (a, 6)));
    runs.push((make_gc1(), 4));
    let mut failures = 0;
    let mut triples = 0;
    for (alg, d) in &runs {
        let r = verify_axioms(alg, *d).unwrap();
        failures += r.failures.len();
        triples += r.triples_checked;
    }
    report(1, failures == 0, format!("({triples} triples, {failures} residuals)"));
    assert_eq!(failures, 0);
}

#[test]
fn criterion_02_annihilation() {
    let alg = make_b(2, Param::symbolic_alpha()).unwrap();
    let alpha = alg.alpha().unwrap().to_poly();
    let closed = check_block_closed_form(&alg, &alpha, 5).unwrap();
    let lie = check_lie_axioms(&alg, &modes_up_to(&alg, 3, 3)).unwrap();
    let ok = closed.passed() && lie.passed();
    report(2, ok, format!("({} brackets, {} mismatches; Lie on {} modes)", closed.compared, closed.mismatches.len(), lie.elements));
    assert!(ok);
}

#[test]
fn criterion_03_simplicity() {
    let mut b1 = Vec::new();
    let mut b2 = Vec::new();
    for a in grid_alphas() {
        let [x, y] = both_b(Param::Value(a));
        b1.push(is_simple_truncated(&x, 5, 10, 1).unwrap().certified);
        b2.push(is_simple_truncated(&y, 5, 10, 1).unwrap().certified);
    }
    let control = is_simple_truncated(&abelian_control(), 5, 10, 1).unwrap().certified;
    let ok = b1.iter().all(|&c| c) && b2.iter().all(|&c| c) && !control;
    report(3, ok, format!("(B(1,α) certified {b1:?}, B(2,α) certified {b2:?}, control certified {control})"));
    // B(1, α) has the proper ideal (∂ - α)C[∂]G_{-1} ⊕ ⊕_{j≥0} C[∂]G_j.
    assert!(b1.iter().all(|&c| !c));
    assert!(b2.iter().all(|&c| c) && !control);
}

#[test]
fn criterion_04_nilpotence() {
    let d = Polynomial::var(Var::d());
    let polys = [Polynomial::one(), d.clone(), &(&d * &d) - &Polynomial::int(3)];
    let mut probes: Vec<Element> = (-1..=5).map(|j| Element::gen(GeneratorId::g(j))).collect();
    probes.push(Element::term(GeneratorId::g(3), d.clone()));
    let (mut accepted, mut rejected, mut total) = (0, 0, 0);
    for a in grid_alphas() {
        for alg in both_b(Param::Value(a)) {
            for p in &polys {
                let x = Element::term(GeneratorId::g(-1), p.clone());
                total += 1;
                accepted += locally_nilpotent_test(&alg, &x, &probes, 8, Parameters::Independent).unwrap().nilpotent_on_probes as usize;
            }
            for j in 0..=5 {
                for p in &polys {
                    let x = Element::term(GeneratorId::g(j), p.clone());
                    total += 1;
                    rejected += !locally_nilpotent_test(&alg, &x, &probes, 8, Parameters::Independent).unwrap().nilpotent_on_probes as usize;
                }
            }
        }
    }
    let ok = accepted + rejected == total;
    report(4, ok, format!("({accepted} grade -1 elements accepted, {rejected} of grade ≥ 0 rejected, {total} tested)"));
    assert!(ok);
}

#[test]
fn criterion_05_isomorphisms() {
    let b0 = solve_b0(6).unwrap();
    let values = [rat(0), rat(1), rat(-1), frac(1, 2), rat(3)];
    let mut ok = b0 == vec![Polynomial::one()];
    for s in [1, 2] {
        for a1 in &values {
            for a2 in &values {
                let sols = iso_rigidity_solve(s, a1, a2, 6).unwrap();
                ok &= if a1 == a2 { sols.iter().any(|x| x.contains(&Polynomial::one(), &Polynomial::one())) } else { sols.is_empty() };
            }
        }
    }
    report(5, ok, format!("(b₀ solutions {b0:?}, 50 parameter pairs)"));
    assert!(ok);
}

#[test]
fn criterion_06_07_classification() {
    let alphas = [AlphaBranch::NonzeroSymbol, AlphaBranch::Value(rat(0))];
    let r = classify_all(&alphas, 6, 6).unwrap();
    let surviving = r.surviving();
    let deltas = surviving.iter().all(|b| (1..=6).all(|j| b.delta[&j] == (j + 2).to_string()));
    let per_alpha = |label: &str| surviving.iter().filter(|b| b.alpha == label).count();
    let dead_end = r
        .branches
        .iter()
        .any(|b| b.branch == "contradiction" && b.params.get("Δ₋₁").map(String::as_str) == Some("0") && !b.a0_nonzero);
    let ok6 = r.identified() == ["B(1,α₁)", "B(2,0)", "B(2,α₁)"]
        && per_alpha("α₁ ≠ 0") == 2
        && per_alpha("α₁ = 0") == 2
        && deltas
        && dead_end;
    report(6, ok6, format!("(identified {:?}, Δ_j = j + 2: {deltas}, Δ₋₁ = 0 branch contradicts: {dead_end})", r.identified()));

    let mut compared = 0;
    let mut differences = 0;
    for alpha in &alphas {
        for o in solve_g1_minus1(alpha, !alpha.is_zero(), 6, &DeltaInjection::None).unwrap() {
            let SeedOutcome::Case(seed) = o else { continue };
            let (p, _) = propagate(alpha, &seed, 6, 6).unwrap();
            let t = normalize(&p.table, 6).unwrap();
            let (s, param) = identify(&t, 6, alpha).unwrap().catalog(alpha);
            differences += table_diff(&t, &table_of_algebra(&make_b(s, param).unwrap(), 6).unwrap()).len();
            compared += t.len();
        }
    }
    let ok7 = compared > 0 && differences == 0;
    report(7, ok7, format!("({compared} entries compared, {differences} differ)"));
    assert!(ok6 && ok7);
}

#[test]
fn criterion_08_obstruction() {
    let points = grid_scan(6, 20, 30);
    let worst = points.iter().map(|p| p.i0).max().flatten();
    let grid_ok = points.iter().all(|p| p.i0.is_some());

    let mut bounds_ok = true;
    let mut worst_bound = 0;
    for m in 2..=6 {
        for d1 in grid_deltas() {
            for dk in grid_deltas() {
                let r = degree_bound_check(&d1, &dk, m, 1..=60).unwrap();
                match r.bound {
                    Some(b) if b <= 30 && r.rows.iter().filter(|x| x.i >= b).all(|x| x.differ) => worst_bound = worst_bound.max(b),
                    _ => bounds_ok = false,
                }
            }
        }
    }

    let series = ["M:1/0;C:2;M:3/1", "M:2/0;M:-1/1", "C:0;M:1/2", "M:1/2;C:1;C:-2", "M:-2/-2;M:3/0;C:0", "C:1;C:0"];
    let mut certified = 0;
    for s in series {
        for a in [rat(0), rat(1)] {
            let c = no_finite_module_certificate(&parse_series(s).unwrap(), &a, 30, 20, 6).unwrap();
            certified += c.certified as usize;
        }
    }
    let ok = grid_ok && bounds_ok && certified >= 5;
    report(
        8,
        ok,
        format!("({} grid points, worst i₀ {worst:?}; degree relation fails from i = {worst_bound}; {certified} series certified)", points.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_09_products() {
    let algebras = [make_virasoro(), make_b(1, Param::symbolic_alpha()).unwrap(), make_b(2, Param::symbolic_alpha()).unwrap(), make_gc1()];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = 0;
    for alg in &algebras {
        for _ in 0..100 {
            let x = random_element(alg, 4, &mut rng);
            let y = random_element(alg, 4, &mut rng);
            if from_products(&all_products(alg, &x, &y).unwrap()) != bracket(alg, &x, &y).unwrap() {
                bad += 1;
            }
        }
    }
    report(9, bad == 0, format!("(400 pairs, {bad} mismatches)"));
    assert_eq!(bad, 0);
}

#[test]
fn criterion_10_determinism() {
    let commands: [&[&str]; 9] = [
        &["axioms", "--algebra", "B2:alpha=sym", "--max-degree", "3"],
        &["table", "--algebra", "gc1", "--max-degree", "2"],
        &["annihilation", "--alpha", "sym", "--max-degree", "3"],
        &["simplicity", "--algebra", "B2:alpha=1/2", "--max-degree", "4", "--seed", "5"],
        &["iso", "--s", "2", "--alpha1", "1", "--alpha2", "1", "--deg", "4"],
        &["classify", "--alpha", "sym", "--max-degree", "4", "--deg", "4"],
        &["obstruction", "--series", "M:1/0;C:2", "--i0", "10", "--window", "10"],
        &["module-check", "--module", "M:sym/sym"],
        &["ranks", "--algebra", "B1:alpha=sym", "--max-degree", "4"],
    ];
    let run = |threads: &str, args: &[&str]| {
        let argv = ["conformal-kit", "--threads", threads].iter().chain(args).map(|s| s.to_string()).collect::<Vec<_>>();
        conformal_kit::cli::run(argv)
    };
    let mut differing = Vec::new();
    for args in commands {
        let first = run("1", args);
        if first != run("1", args) || first != run("2", args) {
            differing.push(args[0]);
        }
    }
    report(10, differing.is_empty(), format!("({} commands, differing: {differing:?})", commands.len()));
    assert!(differing.is_empty());
}
