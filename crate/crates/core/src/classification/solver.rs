//! Parametric linear elimination with case splitting.
//!
//! Rows are linear in a set of unknowns with coefficients polynomial in
//! parameters. Parameters are either fixed symbols known to be nonzero
//! (hypotheses) or branch parameters that may be split on the rational
//! roots of a univariate coefficient.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Polynomial, Rational, RationalFunction, Var};
use crate::error::{Error, Result};

/// `Σ coeffs[u]·u + constant = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinRow {
    pub coeffs: BTreeMap<Var, Polynomial>,
    pub constant: Polynomial,
}

impl LinRow {
    /// Splits a polynomial that is linear in `unknowns`.
    pub fn from_poly(p: &Polynomial, unknowns: &[Var]) -> LinRow {
        let mut coeffs = BTreeMap::new();
        let mut constant = p.clone();
        for &u in unknowns {
            let c = p.coeff(u, 1);
            if !c.is_zero() {
                coeffs.insert(u, c);
            }
            constant = constant.substitute_one(u, &Polynomial::zero());
        }
        LinRow { coeffs, constant }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn unknowns(&self) -> impl Iterator<Item = Var> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn to_poly(&self) -> Polynomial {
        self.coeffs
            .iter()
            .fold(self.constant.clone(), |acc, (u, c)| acc + c * &Polynomial::var(*u))
    }

    fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> LinRow {
        LinRow {
            coeffs: self.coeffs.iter().map(|(u, c)| (*u, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
            constant: f(&self.constant),
        }
    }

    fn substitute(&self, v: Var, value: &Polynomial) -> LinRow {
        self.map(|c| c.substitute_one(v, value))
    }

    fn drop_unknown(&self, u: Var) -> LinRow {
        let mut r = self.clone();
        r.coeffs.remove(&u);
        r
    }

    /// `c_u(pivot)·self - c_u(self)·pivot`, which no longer involves `u`.
    fn eliminate(&self, u: Var, pivot: &LinRow) -> LinRow {
        let Some(cs) = self.coeffs.get(&u) else {
            return self.clone();
        };
        let cp = &pivot.coeffs[&u];
        let mut out = LinRow { coeffs: BTreeMap::new(), constant: cp * &self.constant - cs * &pivot.constant };
        let vars: BTreeSet<Var> = self.coeffs.keys().chain(pivot.coeffs.keys()).copied().collect();
        for v in vars {
            if v == u {
                continue;
            }
            let a = self.coeffs.get(&v).map_or_else(Polynomial::zero, |c| cp * c);
            let b = pivot.coeffs.get(&v).map_or_else(Polynomial::zero, |c| cs * c);
            let c = a - b;
            if !c.is_zero() {
                out.coeffs.insert(v, c);
            }
        }
        out
    }
}

/// Builds rows by matching coefficients of the monomials in `eq_vars`.
pub fn rows_from_equation(eq: &Polynomial, eq_vars: &[Var], unknowns: &[Var]) -> Vec<LinRow> {
    eq.coefficients_wrt(eq_vars)
        .values()
        .map(|c| LinRow::from_poly(c, unknowns))
        .filter(|r| !r.is_zero())
        .collect()
}

#[derive(Clone, Debug)]
pub struct Problem {
    /// Rows are introduced stage by stage, the next one only once the
    /// current rows give nothing more to act on.
    pub stages: Vec<Vec<LinRow>>,
    pub unknowns: Vec<Var>,
    pub params: Vec<Var>,
    pub hypotheses: Vec<Polynomial>,
    pub assignments: Vec<(Var, Polynomial)>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Branch parameter values, in terms of unassigned parameters.
    pub params: BTreeMap<Var, Polynomial>,
    /// Value of every unknown; free unknowns map to themselves.
    pub values: BTreeMap<Var, RationalFunction>,
    pub free: Vec<Var>,
    pub hypotheses: Vec<Polynomial>,
    pub log: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Contradiction {
    pub params: BTreeMap<Var, Polynomial>,
    pub witness: String,
    pub log: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Solved(Solution),
    Contradiction(Contradiction),
}

#[derive(Clone)]
struct Tracked {
    cur: LinRow,
    raw: LinRow,
}

#[derive(Clone)]
struct Branch {
    rows: Vec<Tracked>,
    stage: usize,
    zeroed: BTreeSet<Var>,
    pivots: Vec<(Var, Tracked)>,
    assignments: Vec<(Var, Polynomial)>,
    hypotheses: Vec<Polynomial>,
    log: Vec<String>,
}

enum Step {
    Continue,
    Split(Vec<Branch>),
    Done(Outcome),
}

/// Divides out hypothesis factors as often as they divide.
pub fn strip(c: &Polynomial, hyps: &[Polynomial]) -> Polynomial {
    let mut c = c.clone();
    if c.is_zero() {
        return c;
    }
    for h in hyps {
        if h.constant_value().is_some() {
            continue;
        }
        while let Ok(q) = c.exact_div(h) {
            c = q;
        }
    }
    c
}

pub fn provably_nonzero(c: &Polynomial, hyps: &[Polynomial]) -> bool {
    strip(c, hyps).constant_value().is_some_and(|v| !v.is_zero())
}

fn eval_univariate(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::Classification("root search: coefficient too large".into()))?;
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Distinct rational roots of a univariate polynomial (coefficients in
/// ascending degree), sorted.
pub fn rational_roots(coeffs: &[Rational]) -> Result<Vec<Rational>> {
    let mut cs: Vec<Rational> = coeffs.to_vec();
    while cs.last().is_some_and(Zero::is_zero) {
        cs.pop();
    }
    let mut roots = BTreeSet::new();
    if cs.len() <= 1 {
        return Ok(vec![]);
    }
    if cs[0].is_zero() {
        roots.insert(Rational::zero());
        while cs[0].is_zero() {
            cs.remove(0);
        }
    }
    if cs.len() > 1 {
        let lcm = cs.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = cs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        for p in divisors(&ints[0])? {
            for q in divisors(ints.last().unwrap())? {
                for sign in [1, -1] {
                    let x = Rational::new(p.clone() * sign, q.clone());
                    if eval_univariate(&cs, &x).is_zero() {
                        roots.insert(x);
                    }
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

/// Rational roots of `c` in `p`, requiring `c` to split into linear
/// factors over Q.
fn split_roots(c: &Polynomial, p: Var) -> Result<Vec<Rational>> {
    let coeffs = c.as_univariate(p).expect("univariate");
    let roots = rational_roots(&coeffs)?;
    let mut rest = c.clone();
    for r in &roots {
        let f = Polynomial::var(p) - Polynomial::constant(r.clone());
        while let Ok(q) = rest.exact_div(&f) {
            rest = q;
        }
    }
    if rest.constant_value().is_none() {
        return Err(Error::Classification(format!("{} has no rational splitting in {p}", c.canonical())));
    }
    Ok(roots)
}

fn univariate_param(c: &Polynomial, params: &[Var]) -> Option<Var> {
    let vars = c.vars();
    if vars.len() != 1 {
        return None;
    }
    let v = *vars.iter().next().unwrap();
    params.contains(&v).then_some(v)
}

impl Branch {
    fn params_map(&self) -> BTreeMap<Var, Polynomial> {
        resolve(&self.assignments)
    }

    fn assign(&mut self, v: Var, value: Polynomial, reason: String) -> Option<Outcome> {
        self.log.push(format!("{v} = {} ({reason})", value.canonical()));
        for t in &mut self.rows {
            t.cur = t.cur.substitute(v, &value);
        }
        for (_, t) in &mut self.pivots {
            t.cur = t.cur.substitute(v, &value);
        }
        let mut hyps = Vec::new();
        for h in &self.hypotheses {
            let h2 = h.substitute_one(v, &value);
            if h2.is_zero() {
                return Some(Outcome::Contradiction(Contradiction {
                    params: self.params_map(),
                    witness: format!("{} ≠ 0 violated by {v} = {}", h.canonical(), value.canonical()),
                    log: self.log.clone(),
                }));
            }
            hyps.push(h2);
        }
        self.hypotheses = hyps;
        self.assignments.push((v, value));
        None
    }

    fn zero_unknown(&mut self, u: Var, reason: String) {
        self.log.push(format!("{u} = 0 ({reason})"));
        self.zeroed.insert(u);
        for t in &mut self.rows {
            t.cur = t.cur.drop_unknown(u);
            t.raw = t.raw.drop_unknown(u);
        }
    }

    fn add_row(&mut self, raw: LinRow) {
        let mut t = Tracked { cur: raw.clone(), raw };
        for (v, value) in &self.assignments {
            t.cur = t.cur.substitute(*v, value);
        }
        for &u in &self.zeroed {
            t.cur = t.cur.drop_unknown(u);
            t.raw = t.raw.drop_unknown(u);
        }
        for (u, p) in &self.pivots {
            t.cur = t.cur.eliminate(*u, &p.cur);
            t.raw = t.raw.eliminate(*u, &p.raw);
        }
        self.rows.push(t);
    }

    fn contradiction(&self, row: &Tracked) -> Outcome {
        let raw = strip(&row.raw.constant, &self.hypotheses);
        Outcome::Contradiction(Contradiction {
            params: self.params_map(),
            witness: format!("{} = 0 is inconsistent", raw.canonical()),
            log: self.log.clone(),
        })
    }

    fn split(&self, c: &Polynomial, p: Var, generic_zero: Option<Var>) -> Result<Vec<Branch>> {
        let roots = split_roots(c, p)?;
        let mut out = Vec::new();
        for r in &roots {
            let mut b = self.clone();
            if let Some(Outcome::Contradiction(_)) =
                b.assign(p, Polynomial::constant(r.clone()), format!("root of {}", c.canonical()))
            {
                continue;
            }
            out.push(b);
        }
        if let Some(u) = generic_zero {
            let mut b = self.clone();
            for r in &roots {
                b.hypotheses.push(Polynomial::var(p) - Polynomial::constant(r.clone()));
            }
            b.log.push(format!("{} ≠ 0", c.canonical()));
            b.zero_unknown(u, format!("{} ≠ 0", c.canonical()));
            out.push(b);
        }
        Ok(out)
    }

    fn step(&mut self, problem: &Problem) -> Result<Step> {
        self.rows.retain(|t| !t.cur.is_zero());
        let params = &problem.params;
        // Rows without unknowns.
        for k in 0..self.rows.len() {
            if !self.rows[k].cur.coeffs.is_empty() {
                continue;
            }
            let c = strip(&self.rows[k].cur.constant, &self.hypotheses);
            if c.constant_value().is_some() {
                return Ok(Step::Done(self.contradiction(&self.rows[k])));
            }
            for &p in params.iter().rev() {
                if c.degree_in(p) == Some(1) {
                    if let Some(coef) = c.coeff(p, 1).constant_value() {
                        let rest = c.substitute_one(p, &Polynomial::zero());
                        let value = rest.scale(&(-Rational::one() / coef));
                        let raw = strip(&self.rows[k].raw.constant, &self.hypotheses);
                        let reason = if raw == c {
                            format!("{} = 0", c.canonical())
                        } else {
                            format!("{} = 0, from {} = 0", c.canonical(), raw.canonical())
                        };
                        self.rows.remove(k);
                        if let Some(o) = self.assign(p, value, reason) {
                            return Ok(Step::Done(o));
                        }
                        return Ok(Step::Continue);
                    }
                }
            }
        }
        for k in 0..self.rows.len() {
            if !self.rows[k].cur.coeffs.is_empty() {
                continue;
            }
            let c = strip(&self.rows[k].cur.constant, &self.hypotheses);
            if let Some(p) = univariate_param(&c, params) {
                return Ok(Step::Split(self.split(&c, p, None)?));
            }
        }
        // Homogeneous rows in a single unknown.
        let single = |t: &Tracked| t.cur.coeffs.len() == 1 && t.cur.constant.is_zero();
        for k in 0..self.rows.len() {
            if single(&self.rows[k]) {
                let (&u, c) = self.rows[k].cur.coeffs.iter().next().unwrap();
                if provably_nonzero(c, &self.hypotheses) {
                    let reason = format!("{}·{u} = 0", c.canonical());
                    self.zero_unknown(u, reason);
                    return Ok(Step::Continue);
                }
            }
        }
        for k in 0..self.rows.len() {
            if single(&self.rows[k]) {
                let (&u, c) = self.rows[k].cur.coeffs.iter().next().unwrap();
                let c = strip(c, &self.hypotheses);
                if let Some(p) = univariate_param(&c, params) {
                    return Ok(Step::Split(self.split(&c, p, Some(u))?));
                }
            }
        }
        // Pivot on a provably nonzero coefficient, fewest unknowns first.
        let mut best: Option<(usize, usize, Var)> = None;
        for (k, t) in self.rows.iter().enumerate() {
            let n = t.cur.coeffs.len();
            if best.is_some_and(|(bn, _, _)| bn <= n) {
                continue;
            }
            if let Some((&u, _)) = t.cur.coeffs.iter().rev().find(|(_, c)| provably_nonzero(c, &self.hypotheses)) {
                best = Some((n, k, u));
            }
        }
        if let Some((_, k, u)) = best {
            let piv = self.rows.remove(k);
            for t in &mut self.rows {
                t.cur = t.cur.eliminate(u, &piv.cur);
                t.raw = t.raw.eliminate(u, &piv.raw);
            }
            self.pivots.push((u, piv));
            return Ok(Step::Continue);
        }
        for t in &self.rows {
            for c in t.cur.coeffs.values() {
                let c = strip(c, &self.hypotheses);
                if let Some(p) = univariate_param(&c, params) {
                    let mut branches = self.split(&c, p, None)?;
                    let mut generic = self.clone();
                    for r in split_roots(&c, p)? {
                        generic.hypotheses.push(Polynomial::var(p) - Polynomial::constant(r));
                    }
                    generic.log.push(format!("{} ≠ 0", c.canonical()));
                    branches.push(generic);
                    return Ok(Step::Split(branches));
                }
            }
        }
        if self.stage < problem.stages.len() {
            for r in problem.stages[self.stage].clone() {
                self.add_row(r);
            }
            self.stage += 1;
            return Ok(Step::Continue);
        }
        if self.rows.is_empty() {
            return Ok(Step::Done(Outcome::Solved(self.finish(problem)?)));
        }
        Err(Error::Classification(format!(
            "elimination stuck on {}",
            self.rows.iter().map(|t| t.cur.to_poly().canonical()).collect::<Vec<_>>().join("; ")
        )))
    }

    fn finish(&self, problem: &Problem) -> Result<Solution> {
        let params = self.params_map();
        let mut values: BTreeMap<Var, RationalFunction> = BTreeMap::new();
        let pivoted: BTreeSet<Var> = self.pivots.iter().map(|(u, _)| *u).collect();
        let mut free = Vec::new();
        for &u in &problem.unknowns {
            if self.zeroed.contains(&u) {
                values.insert(u, RationalFunction::zero());
            } else if !pivoted.contains(&u) {
                values.insert(u, RationalFunction::from_poly(Polynomial::var(u)));
                free.push(u);
            }
        }
        for (u, t) in self.pivots.iter().rev() {
            let row = t.cur.map(|c| c.substitute(&params));
            let mut acc = RationalFunction::from_poly(row.constant.clone());
            for (v, c) in &row.coeffs {
                if v == u {
                    continue;
                }
                let val = values.get(v).cloned().unwrap_or_else(RationalFunction::zero);
                acc = acc + RationalFunction::from_poly(c.clone()) * val;
            }
            let value = (-acc).checked_div(&RationalFunction::from_poly(row.coeffs[u].clone()))?;
            values.insert(*u, value);
        }
        Ok(Solution {
            params,
            values,
            free,
            hypotheses: self.hypotheses.clone(),
            log: self.log.clone(),
        })
    }
}

/// Applies later assignments to earlier ones.
fn resolve(assignments: &[(Var, Polynomial)]) -> BTreeMap<Var, Polynomial> {
    let mut out: BTreeMap<Var, Polynomial> = BTreeMap::new();
    for (v, value) in assignments.iter().rev() {
        let value = value.substitute(&out);
        out.insert(*v, value);
    }
    out
}

/// Every branch outcome, in a deterministic order.
pub fn solve(problem: &Problem) -> Result<Vec<Outcome>> {
    let mut root = Branch {
        rows: Vec::new(),
        stage: 0,
        zeroed: BTreeSet::new(),
        pivots: Vec::new(),
        assignments: Vec::new(),
        hypotheses: problem.hypotheses.clone(),
        log: Vec::new(),
    };
    for (v, value) in &problem.assignments {
        if let Some(o) = root.assign(*v, value.clone(), "given".into()) {
            return Ok(vec![o]);
        }
    }
    let mut stack = vec![root];
    let mut out = Vec::new();
    while let Some(mut b) = stack.pop() {
        loop {
            match b.step(problem)? {
                Step::Continue => {}
                Step::Split(bs) => {
                    stack.extend(bs.into_iter().rev());
                    break;
                }
                Step::Done(o) => {
                    out.push(o);
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    fn v(s: &str) -> Polynomial {
        Polynomial::v(s)
    }

    #[test]
    fn roots() {
        // 2x^3 - 3x^2 - 2x = x(2x+1)(x-2)
        let r = rational_roots(&[rat(0), rat(-2), rat(-3), rat(2)]).unwrap();
        assert_eq!(r, vec![frac(-1, 2), rat(0), rat(2)]);
        assert!(rational_roots(&[rat(1), rat(0), rat(1)]).unwrap().is_empty());
        assert!(split_roots(&(v("p").pow(2) + Polynomial::one()), Var::new("p")).is_err());
    }

    #[test]
    fn strip_hypotheses() {
        let a = v("a");
        let hyps = vec![a.clone()];
        assert!(provably_nonzero(&(a.pow(2).scale(&rat(3))), &hyps));
        assert!(!provably_nonzero(&(a.clone() + Polynomial::one()), &hyps));
    }

    #[test]
    fn splits_on_parameter() {
        // (p-1)·x = 0 and x - 1 = 0: only p = 1 survives.
        let (p, x) = (Var::new("p"), Var::new("x"));
        let e1 = (v("p") - Polynomial::one()) * v("x");
        let e2 = v("x") - Polynomial::one();
        let problem = Problem {
            stages: vec![vec![LinRow::from_poly(&e1, &[x])], vec![LinRow::from_poly(&e2, &[x])]],
            unknowns: vec![x],
            params: vec![p],
            hypotheses: vec![],
            assignments: vec![],
        };
        let out = solve(&problem).unwrap();
        let solved: Vec<&Solution> = out
            .iter()
            .filter_map(|o| match o {
                Outcome::Solved(s) => Some(s),
                _ => None,
            })
            .collect();
        assert_eq!(solved.len(), 1);
        assert_eq!(solved[0].params[&p], Polynomial::one());
        assert_eq!(solved[0].values[&x], RationalFunction::one());
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn assigns_linear_relation() {
        let (p, q, x) = (Var::new("p"), Var::new("q"), Var::new("x"));
        let rows = vec![
            LinRow::from_poly(&(v("p") + v("q") - Polynomial::int(3)), &[x]),
            LinRow::from_poly(&(v("x") * v("a") - v("p")), &[x]),
        ];
        let problem = Problem {
            stages: vec![rows],
            unknowns: vec![x],
            params: vec![p, q],
            hypotheses: vec![v("a")],
            assignments: vec![],
        };
        let out = solve(&problem).unwrap();
        let Outcome::Solved(s) = &out[0] else { panic!() };
        assert_eq!(s.params[&q], Polynomial::int(3) - v("p"));
        assert_eq!(s.values[&x], RationalFunction::new(v("p"), v("a")).unwrap());
    }
}
