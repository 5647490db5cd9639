//! Grading constants and the structure function `g_{1,-1}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{nullspace, rat, Polynomial, Rational, RationalFunction, Var};
use crate::error::{Error, Result};

use super::solver::{rows_from_equation, solve, Outcome, Problem};
use super::table::{del, div_exact, lam, mu, skew, verify_table, Table};

/// How α₁ enters a run: a nonzero symbol, or a fixed rational value.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaBranch {
    NonzeroSymbol,
    Value(Rational),
}

impl AlphaBranch {
    pub fn poly(&self) -> Polynomial {
        match self {
            AlphaBranch::NonzeroSymbol => Polynomial::var(Var::a()),
            AlphaBranch::Value(v) => Polynomial::constant(v.clone()),
        }
    }

    pub fn hypotheses(&self) -> Vec<Polynomial> {
        match self {
            AlphaBranch::NonzeroSymbol => vec![Polynomial::var(Var::a())],
            AlphaBranch::Value(_) => vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AlphaBranch::Value(v) if v == &rat(0))
    }

    pub fn label(&self) -> String {
        match self {
            AlphaBranch::NonzeroSymbol => "α₁ ≠ 0".into(),
            AlphaBranch::Value(v) => format!("α₁ = {}", crate::arith::fmt_rational(v)),
        }
    }
}

pub fn delta_var(j: i64) -> Var {
    const SUB: [&str; 10] = ["₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"];
    let digits: String = j.abs().to_string().chars().map(|c| SUB[c.to_digit(10).unwrap() as usize]).collect();
    Var::new(&format!("Δ{}{digits}", if j < 0 { "₋" } else { "" }))
}

pub fn gauge_var(j: i64) -> Var {
    Var::new(&format!("k{j}"))
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingConstants {
    /// `α_j / α₁` for `j ∈ [-1, max]`.
    pub alpha_ratio: BTreeMap<i64, String>,
    pub delta0: String,
    /// Pairs `(i, j)` whose nonvanishing forced `α_{i+j} = α_i + α_j`.
    pub forcing_pairs: Vec<(i64, i64)>,
    pub caveat: String,
}

/// `α_j = jα₁` and `Δ₀ = 2`.
///
/// The relation `(α_{i+j} - α_i - α_j) g_{i,j} = 0` only constrains pairs
/// with `g_{i,j} ≠ 0`. The pairs used are those known to be nonzero
/// before anything is solved: `(0, j)` and `(-1, j)`, `j ≥ 1`.
pub fn derive_grading_constants(max: i64) -> Result<GradingConstants> {
    let n = (max + 2) as usize;
    let col = |j: i64| (j + 1) as usize;
    let mut pairs = vec![(0, 0)];
    pairs.extend((1..=max).map(|j| (-1, j)));
    let rows: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut r = vec![rat(0); n];
            r[col(i + j)] += rat(1);
            r[col(i)] -= rat(1);
            r[col(j)] -= rat(1);
            r
        })
        .collect();
    let ns = nullspace(&rows, n);
    if ns.len() != 1 || ns[0][col(1)] == rat(0) {
        return Err(Error::Classification("grading constants not determined by α₁".into()));
    }
    let scale = ns[0][col(1)].clone();
    let alpha_ratio = (-1..=max)
        .map(|j| (j, crate::arith::fmt_rational(&(ns[0][col(j)].clone() / scale.clone()))))
        .collect();
    // Skew-symmetry of (∂ + Δ₀λ) leaves (Δ₀ - 2)∂.
    let dv = delta_var(0);
    let g00 = RationalFunction::from_poly(del() + Polynomial::var(dv) * lam());
    let resid = (g00.clone() - skew(&g00)?).into_polynomial()?;
    let rows = rows_from_equation(&resid, &[Var::l(), Var::d()], &[]);
    let delta0 = match rows.as_slice() {
        [r] if r.constant.degree_in(dv) == Some(1) => {
            let c = &r.constant;
            let coef = c.coeff(dv, 1).constant_value().unwrap();
            -c.substitute_one(dv, &Polynomial::zero()).constant_value().unwrap() / coef
        }
        _ => return Err(Error::Classification("Δ₀ not determined".into())),
    };
    Ok(GradingConstants {
        alpha_ratio,
        delta0: crate::arith::fmt_rational(&delta0),
        forcing_pairs: pairs,
        caveat: "constraints taken only from pairs with g_{i,j} known to be nonzero".into(),
    })
}

/// An extra constraint on `Δ₋₁` imposed before solving.
#[derive(Clone, Debug, PartialEq)]
pub enum DeltaInjection {
    None,
    Value(Rational),
    /// `Δ₋₁ ∉ {0, 1}`.
    Excluded,
}

#[derive(Clone, Debug)]
pub struct SeedCase {
    pub delta_m1: Rational,
    pub delta_1: Rational,
    /// `g_{1,-1}(λ, ∂)`, with the free scale `k1`.
    pub g: RationalFunction,
    pub log: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum SeedOutcome {
    Case(SeedCase),
    Contradiction { params: BTreeMap<Var, Polynomial>, witness: String, log: Vec<String> },
}

/// `(∂+jα₁ + Δ_j λ)` for `g_{0,j}`.
pub fn g0(j: i64, alpha: &Polynomial, delta: &Polynomial) -> RationalFunction {
    RationalFunction::from_poly(alpha.scale(&rat(j)) + del() + delta * &lam())
}

/// Known part of the table in grades −1..1 around a seed.
pub fn seed_table(alpha: &Polynomial, dm1: &Rational, d1: &Rational, g1m1: &RationalFunction) -> Result<Table> {
    let mut t = Table::new();
    let c = |r: &Rational| Polynomial::constant(r.clone());
    for (j, d) in [(-1, c(dm1)), (0, Polynomial::int(2)), (1, c(d1))] {
        let g = g0(j, alpha, &d);
        t.insert((j, 0), skew(&g)?);
        t.insert((0, j), g);
    }
    t.insert((-1, -1), RationalFunction::zero());
    t.insert((-1, 1), skew(g1m1)?);
    t.insert((1, -1), g1m1.clone());
    Ok(t)
}

/// `(Δ₋₁, Δ₁, g_{1,-1})` in one branch of `α₁` and of `a⁰ = g_{1,-1}(0,0)`.
///
/// `G(x) = g_{1,-1}(x, 0)` is a polynomial of degree at most `degree`,
/// normalized to `G(0) = 1` when `a⁰ ≠ 0`. The equations are the relation
/// between `G(μ)` and `G(μ+∂)` obtained from `g_{1,-1}(μ, λ)` and the
/// Jacobi identity on `(-1, 1, -1)`, introduced through its
/// specializations `μ = -∂` and `μ = 0` first.
pub fn solve_g1_minus1(
    alpha: &AlphaBranch,
    a0_nonzero: bool,
    degree: usize,
    injection: &DeltaInjection,
) -> Result<Vec<SeedOutcome>> {
    let (dm1, d1) = (delta_var(-1), delta_var(1));
    let a = alpha.poly();
    let unknowns: Vec<Var> = (1..=degree).map(|k| Var::new(&format!("u{k}"))).collect();
    let big_g = |x: &Polynomial| -> Polynomial {
        let base = if a0_nonzero { Polynomial::one() } else { Polynomial::zero() };
        unknowns.iter().enumerate().fold(base, |acc, (k, u)| acc + Polynomial::var(*u) * x.pow(k as u32 + 1))
    };
    let (m, d) = (mu(), del());
    let (pdm1, pd1) = (Polynomial::var(dm1), Polynomial::var(d1));
    let one = Polynomial::one();
    let e3 = (d.scale(&rat(2)) * (&a - &m - &d)) * big_g(&m)
        - (&a - &m + (&pdm1 - &one) * &d)
            * ((&a - &m + (&pd1 - &one) * &d) * big_g(&(&m + &d)) - (&a - &m - &pdm1 * &d) * big_g(&m));
    let mut b = BTreeMap::new();
    b.insert(Var::m(), d.clone());
    b.insert(Var::d(), -d.clone());
    let e1 = e3.substitute(&b);
    let e2 = e3.substitute_one(Var::m(), &Polynomial::zero());
    let vars = [Var::m(), Var::d()];
    let problem = Problem {
        stages: [e1, e2, e3].iter().map(|e| rows_from_equation(e, &vars, &unknowns)).collect(),
        unknowns: unknowns.clone(),
        params: vec![dm1, d1],
        hypotheses: alpha
            .hypotheses()
            .into_iter()
            .chain(match injection {
                DeltaInjection::Excluded => vec![pdm1.clone(), &pdm1 - &one],
                _ => vec![],
            })
            .collect(),
        assignments: match injection {
            DeltaInjection::Value(v) => vec![(dm1, Polynomial::constant(v.clone()))],
            _ => vec![],
        },
    };
    let mut out = Vec::new();
    for o in solve(&problem)? {
        match o {
            Outcome::Contradiction(c) => out.push(SeedOutcome::Contradiction { params: c.params, witness: c.witness, log: c.log }),
            Outcome::Solved(s) => {
                let value = |v: Var| -> Result<Rational> {
                    s.params
                        .get(&v)
                        .and_then(Polynomial::constant_value)
                        .ok_or_else(|| Error::Classification(format!("{v} left undetermined")))
                };
                let k1 = Polynomial::var(gauge_var(1));
                let mut gx = RationalFunction::from_poly(if a0_nonzero { k1.clone() } else { Polynomial::zero() });
                let scale = if a0_nonzero {
                    if !s.free.is_empty() {
                        return Err(Error::Classification("free coefficients with a⁰ ≠ 0".into()));
                    }
                    RationalFunction::from_poly(k1.clone())
                } else {
                    RationalFunction::one()
                };
                let mut rename = BTreeMap::new();
                if !a0_nonzero {
                    match s.free.as_slice() {
                        [] => {}
                        [u] => {
                            rename.insert(*u, k1.clone());
                        }
                        _ => return Err(Error::Classification("more than one free coefficient".into())),
                    }
                }
                let x = Polynomial::v("x");
                for (k, u) in unknowns.iter().enumerate() {
                    let c = s.values[u].substitute(&rename)?;
                    gx = gx + c * scale.clone() * RationalFunction::from_poly(x.pow(k as u32 + 1));
                }
                let mut log = s.log.clone();
                if gx.is_zero() {
                    log.push("g_{1,-1}(∂,0) = 0".into());
                    out.push(SeedOutcome::Contradiction {
                        params: s.params,
                        witness: "g_{1,-1} = 0, but [g_{-1} λ g_1] must not vanish".into(),
                        log,
                    });
                    continue;
                }
                let (vm1, v1) = match (value(dm1), value(d1)) {
                    (Ok(x), Ok(y)) => (x, y),
                    (Err(e), _) | (_, Err(e)) => return Err(Error::Classification(format!("{e}; g_{{1,-1}}(∂,0) = {gx}"))),
                };
                let g = g1m1_from_restriction(&gx, &a, &vm1, &v1)?;
                let t = seed_table(&a, &vm1, &v1, &g)?;
                verify_table(&t, 1)?;
                out.push(SeedOutcome::Case(SeedCase { delta_m1: vm1, delta_1: v1, g, log }));
            }
        }
    }
    Ok(out)
}

/// `g(μ, λ) = ((α-μ+(Δ₁-1)λ) G(λ+μ) - (α-μ-Δ₋₁λ) G(μ)) / 2λ`, returned in
/// the variables `(λ, ∂)`.
pub fn g1m1_from_restriction(gx: &RationalFunction, a: &Polynomial, dm1: &Rational, d1: &Rational) -> Result<RationalFunction> {
    let x = Var::new("x");
    let (l, m) = (lam(), mu());
    let c = |r: &Rational| Polynomial::constant(r.clone());
    let at = |p: &Polynomial| gx.substitute_one(x, p);
    let f1 = RationalFunction::from_poly(a - &m + (c(d1) - Polynomial::one()) * &l);
    let f2 = RationalFunction::from_poly(a - &m - c(dm1) * &l);
    let num = f1 * at(&(&l + &m))? - f2 * at(&m)?;
    let g = div_exact(&num, &RationalFunction::from_poly(l.scale(&rat(2))))?;
    let mut b = BTreeMap::new();
    b.insert(Var::m(), lam());
    b.insert(Var::l(), del());
    g.substitute(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cases(alpha: AlphaBranch, a0: bool) -> (Vec<SeedCase>, Vec<String>) {
        let mut cs = Vec::new();
        let mut ws = Vec::new();
        for o in solve_g1_minus1(&alpha, a0, 6, &DeltaInjection::None).unwrap() {
            match o {
                SeedOutcome::Case(c) => cs.push(c),
                SeedOutcome::Contradiction { witness, .. } => ws.push(witness),
            }
        }
        (cs, ws)
    }

    fn k1() -> Polynomial {
        Polynomial::var(gauge_var(1))
    }

    #[test]
    fn grading_constants() {
        let g = derive_grading_constants(4).unwrap();
        assert_eq!(g.alpha_ratio[&2], "2");
        assert_eq!(g.alpha_ratio[&-1], "-1");
        assert_eq!(g.alpha_ratio[&0], "0");
        assert_eq!(g.delta0, "2");
    }

    #[test]
    fn alpha_nonzero_a0_nonzero() {
        let (cs, _) = cases(AlphaBranch::NonzeroSymbol, true);
        assert_eq!(cs.len(), 2);
        let a = Polynomial::var(Var::a());
        let (c0, c1) = (&cs[0], &cs[1]);
        assert_eq!((c0.delta_m1.clone(), c0.delta_1.clone()), (rat(0), rat(3)));
        assert_eq!(c0.g, RationalFunction::from_poly(k1()));
        assert_eq!((c1.delta_m1.clone(), c1.delta_1.clone()), (rat(1), rat(3)));
        let expect = RationalFunction::new(k1() * (&a - &lam() - &del()), a.clone()).unwrap();
        assert_eq!(c1.g, expect);
    }

    #[test]
    fn alpha_nonzero_a0_zero_is_contradictory() {
        let (cs, ws) = cases(AlphaBranch::NonzeroSymbol, false);
        assert!(cs.is_empty());
        assert!(!ws.is_empty());
    }

    #[test]
    fn alpha_zero() {
        let (cs, _) = cases(AlphaBranch::Value(rat(0)), true);
        assert_eq!(cs.len(), 1);
        assert_eq!((cs[0].delta_m1.clone(), cs[0].delta_1.clone()), (rat(0), rat(3)));
        let (cs, ws) = cases(AlphaBranch::Value(rat(0)), false);
        assert_eq!(cs.len(), 1, "{ws:?}");
        assert_eq!((cs[0].delta_m1.clone(), cs[0].delta_1.clone()), (rat(1), rat(3)));
        assert_eq!(cs[0].g, RationalFunction::from_poly(k1() * (lam() + del())));
    }
}
