//! Extension of a seed to all grades up to a bound.

use std::collections::BTreeMap;

use crate::arith::{rat, Polynomial, Rational, RationalFunction, Var};
use crate::error::{Error, Result};

use super::seed::{delta_var, g0, gauge_var, seed_table, AlphaBranch, SeedCase};
use super::solver::{rows_from_equation, solve, strip, Outcome, Problem};
use super::table::{del, entry, eval_at, jacobi, lam, mu, skew, verify_table, Table};

#[derive(Clone, Debug)]
pub struct Propagated {
    pub max: i64,
    /// `Δ_j` for `j ∈ [-1, max]`.
    pub deltas: BTreeMap<i64, Rational>,
    pub table: Table,
    pub jacobi_checked: usize,
    pub log: Vec<String>,
}

/// A branch discarded while extending, with the reason.
#[derive(Clone, Debug)]
pub struct DeadBranch {
    pub grade: i64,
    pub params: BTreeMap<Var, Polynomial>,
    pub reason: String,
}

fn eq_vars() -> [Var; 3] {
    [Var::l(), Var::m(), Var::d()]
}

fn hypotheses(alpha: &AlphaBranch, upto: i64) -> Vec<Polynomial> {
    let mut h = alpha.hypotheses();
    h.extend((1..=upto).map(|j| Polynomial::var(gauge_var(j))));
    h
}

/// `f / p`, where `p` may carry nonzero parameter factors not dividing `f`.
/// The quotient must be polynomial in `λ, μ, ∂`.
fn divide(f: &RationalFunction, p: &RationalFunction, hyps: &[Polynomial]) -> Result<RationalFunction> {
    if p.is_zero() {
        return Err(Error::Classification("division by a vanishing structure function".into()));
    }
    let core = strip(p.num(), hyps);
    let factor = p.num().exact_div(&core)?;
    let q = (f.num() * p.den()).exact_div(&core).map_err(|_| {
        Error::Classification(format!("{} does not divide {}", core.pretty(), f.num().pretty()))
    })?;
    let out = RationalFunction::new(q, f.den() * &factor)?;
    if eq_vars().iter().any(|&v| out.den().involves(v)) {
        return Err(Error::Classification("quotient is not polynomial".into()));
    }
    Ok(out)
}

fn numerator_of(r: Result<RationalFunction>) -> Result<Polynomial> {
    Ok(r?.num().clone())
}

fn jacobi_known(t: &Table, i: i64, j: i64, k: i64) -> Result<RationalFunction> {
    jacobi(t, i, j, k).ok_or_else(|| Error::Classification(format!("missing entry for Jacobi ({i},{j},{k})")))?
}

/// Candidates `(Δ_n, g_{-1,n})` with `g_{-1,n} = k_n · shape`, `shape` of
/// degree at most `degree`.
fn solve_minus_one(
    t: &Table,
    n: i64,
    alpha: &AlphaBranch,
    degree: u32,
    dead: &mut Vec<DeadBranch>,
) -> Result<Vec<(Rational, RationalFunction)>> {
    let a = alpha.poly();
    let dn = delta_var(n);
    let mut unknowns = Vec::new();
    let mut ansatz = Polynomial::zero();
    for p in 0..=degree {
        for q in 0..=degree - p {
            let c = Var::new(&format!("c{p}_{q}"));
            unknowns.push(c);
            ansatz += Polynomial::var(c) * lam().pow(p) * del().pow(q);
        }
    }
    let mut t = t.clone();
    let g = RationalFunction::from_poly(ansatz.clone());
    t.insert((-1, n), g.clone());
    t.insert((0, n), g0(n, &a, &Polynomial::var(dn)));
    let vars = eq_vars();
    let stages = [(0, -1, n), (-1, -1, n)]
        .iter()
        .map(|&(i, j, k)| Ok(rows_from_equation(&numerator_of(jacobi_known(&t, i, j, k))?, &vars, &unknowns)))
        .collect::<Result<Vec<_>>>()?;
    let problem = Problem {
        stages,
        unknowns: unknowns.clone(),
        params: vec![dn],
        hypotheses: hypotheses(alpha, n - 1),
        assignments: vec![],
    };
    let mut out = Vec::new();
    for o in solve(&problem)? {
        match o {
            Outcome::Contradiction(c) => dead.push(DeadBranch { grade: n, params: c.params, reason: c.witness }),
            Outcome::Solved(s) => {
                let mut rename = BTreeMap::new();
                match s.free.as_slice() {
                    [] => {
                        dead.push(DeadBranch { grade: n, params: s.params, reason: format!("g_{{-1,{n}}} = 0") });
                        continue;
                    }
                    [u] => {
                        rename.insert(*u, Polynomial::var(gauge_var(n)));
                    }
                    _ => return Err(Error::Classification(format!("g_{{-1,{n}}} has more than one free coefficient"))),
                }
                let delta = s.params.get(&dn).and_then(Polynomial::constant_value).ok_or_else(|| {
                    Error::Classification(format!("Δ_{n} undetermined with g_{{-1,{n}}} ≠ 0"))
                })?;
                let mut values = BTreeMap::new();
                for u in &unknowns {
                    let v = s.values[u].substitute(&rename)?;
                    values.insert(*u, v);
                }
                let mut g = RationalFunction::zero();
                let exps = (0..=degree).flat_map(|p| (0..=degree - p).map(move |q| (p, q)));
                for ((p, q), u) in exps.zip(&unknowns) {
                    g = g + values[u].clone() * RationalFunction::from_poly(lam().pow(p) * del().pow(q));
                }
                out.push((delta, g));
            }
        }
    }
    Ok(out)
}

/// `g_{1,n-1}` from the Jacobi identity on `(-1, 1, n-1)`, where it appears
/// as `g_{1,n-1}(μ, λ+∂) g_{-1,n}(λ, ∂)`.
fn solve_one(t: &Table, n: i64, hyps: &[Polynomial]) -> Result<RationalFunction> {
    let mut t0 = t.clone();
    t0.insert((1, n - 1), RationalFunction::zero());
    let rest = jacobi_known(&t0, -1, 1, n - 1)?;
    let x = divide(&-rest, &t[&(-1, n)], hyps)?;
    let shifted = x.substitute_one(Var::d(), &(del() - lam()))?;
    if shifted.involves(Var::l()) {
        return Err(Error::Classification(format!("g_{{1,{}}}(μ, λ+∂) is not a function of λ+∂", n - 1)));
    }
    shifted.substitute_one(Var::m(), &lam())
}

/// `g_{a,b}` from the Jacobi identity on `(a, 1, b-1)`, where it appears
/// as `g_{1,b-1}(μ, λ+∂) g_{a,b}(λ, ∂)`.
fn solve_pair(t: &Table, a: i64, b: i64, hyps: &[Polynomial]) -> Result<RationalFunction> {
    let mut t0 = t.clone();
    t0.insert((a, b), RationalFunction::zero());
    let rest = jacobi_known(&t0, a, 1, b - 1)?;
    let coeff = eval_at(&entry(t, 1, b - 1).unwrap(), &mu(), &(lam() + del()))?;
    let x = divide(&-rest, &coeff, hyps)?;
    if x.involves(Var::m()) {
        return Err(Error::Classification(format!("g_{{{a},{b}}} depends on μ")));
    }
    Ok(x)
}

/// Fills every entry of total grade `n` given `(Δ_n, g_{-1,n})`.
fn extend(t: &Table, n: i64, alpha: &AlphaBranch, delta: &Rational, g: &RationalFunction) -> Result<Table> {
    let hyps = hypotheses(alpha, n);
    let mut t = t.clone();
    let put = |t: &mut Table, i: i64, j: i64, g: RationalFunction| -> Result<()> {
        t.insert((j, i), skew(&g)?);
        t.insert((i, j), g);
        Ok(())
    };
    put(&mut t, -1, n, g.clone())?;
    put(&mut t, 0, n, g0(n, &alpha.poly(), &Polynomial::constant(delta.clone())))?;
    let g1 = solve_one(&t, n, &hyps)?;
    put(&mut t, 1, n - 1, g1)?;
    for b in 2..n - 1 {
        let a = n - b;
        let g = solve_pair(&t, a, b, &hyps)?;
        if let Some(prev) = t.get(&(a, b)) {
            if !(prev.clone() - g.clone()).is_zero() {
                return Err(Error::Classification(format!("g_{{{a},{b}}} disagrees with its skew partner")));
            }
        } else {
            put(&mut t, a, b, g)?;
        }
    }
    Ok(t)
}

/// Extends a seed through grade `max`. At each grade exactly one
/// candidate must survive the Jacobi check on `[-1, n]`.
pub fn propagate(
    alpha: &AlphaBranch,
    seed: &SeedCase,
    max: i64,
    degree: u32,
) -> Result<(Propagated, Vec<DeadBranch>)> {
    let a = alpha.poly();
    let mut table = seed_table(&a, &seed.delta_m1, &seed.delta_1, &seed.g)?;
    let mut deltas: BTreeMap<i64, Rational> =
        [(-1, seed.delta_m1.clone()), (0, rat(2)), (1, seed.delta_1.clone())].into_iter().collect();
    let mut log = seed.log.clone();
    let mut dead = Vec::new();
    let mut checked = verify_table(&table, 1)?;
    for n in 2..=max {
        let mut survivors = Vec::new();
        for (delta, g) in solve_minus_one(&table, n, alpha, degree, &mut dead)? {
            let attempt = extend(&table, n, alpha, &delta, &g).and_then(|t| Ok((verify_table(&t, n)?, t)));
            match attempt {
                Ok((c, t)) => survivors.push((delta, t, c)),
                Err(e) => dead.push(DeadBranch {
                    grade: n,
                    params: [(delta_var(n), Polynomial::constant(delta.clone()))].into_iter().collect(),
                    reason: e.to_string(),
                }),
            }
        }
        let (delta, t, c) = match survivors.len() {
            1 => survivors.pop().unwrap(),
            k => {
                let why: Vec<String> = dead.iter().filter(|d| d.grade == n).map(|d| d.reason.clone()).collect();
                return Err(Error::Classification(format!("{k} candidates survive at grade {n}: {}", why.join("; "))));
            }
        };
        log.push(format!("grade {n}: Δ = {}", crate::arith::fmt_rational(&delta)));
        deltas.insert(n, delta);
        table = t;
        checked = c;
    }
    Ok((Propagated { max, deltas, table, jacobi_checked: checked, log }, dead))
}
