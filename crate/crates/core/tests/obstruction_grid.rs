use conformal_kit::arith::rat;
use conformal_kit::obstruction::*;

#[test]
fn sampled_grid_points_have_an_i0() {
    let free = |d: i64, b: i64| Factor::free(rat(d), rat(b)).unwrap();
    let pairs = [
        (free(1, 0), free(1, 0)),
        (free(-2, 1), Factor::Trivial { beta: rat(0) }),
        (Factor::Trivial { beta: rat(-2) }, free(3, -2)),
        (Factor::Trivial { beta: rat(1) }, Factor::Trivial { beta: rat(1) }),
    ];
    for (bottom, top) in pairs {
        let p = ObstructionProblem { i: 1, alpha: rat(1), bottom, top, degree: 6 };
        let i0 = find_i0(&p, 20, 30);
        assert!(i0.is_some_and(|i| i <= 30), "{p:?}");
    }
}

#[test]
fn degree_relation_fails_beyond_a_bound() {
    for d1 in grid_deltas() {
        for dk in grid_deltas() {
            let r = degree_bound_check(&d1, &dk, 2, 5..=50).unwrap();
            let bound = r.bound.expect("sides differ at the end of the range");
            assert!(r.rows.iter().filter(|x| x.i >= bound).all(|x| x.differ));
        }
    }
}

#[test]
fn small_grades_are_outside_the_claim() {
    let m3 = Factor::free(rat(3), rat(0)).unwrap();
    let nonzero: Vec<i64> = (0..=6)
        .filter(|&i| {
            let p = ObstructionProblem { i, alpha: rat(0), bottom: m3.clone(), top: m3.clone(), degree: 6 };
            !certify_trivial_action(&p).trivial
        })
        .collect();
    println!("grades with a nonzero solution: {nonzero:?}");
    assert!(!nonzero.is_empty());
}
