//! Rigidity equations for isomorphisms `B(s, α₁) → B(s, α₂)` with
//! `G_{-1} ↦ a(∂)G_{-1}` and grade −1 part `b₀(∂)` of the image of `G_0`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{nullspace, rat, Monomial, Polynomial, Rational, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoSolution {
    pub b0: String,
    /// Basis of the space of admissible `a(∂)`; nonempty.
    pub a_basis: Vec<String>,
    #[serde(skip)]
    a_polys: Vec<Polynomial>,
    #[serde(skip)]
    b0_poly: Polynomial,
}

impl IsoSolution {
    /// Whether `(a, b₀)` lies in this solution family.
    pub fn contains(&self, a: &Polynomial, b0: &Polynomial) -> bool {
        if b0 != &self.b0_poly || a.is_zero() {
            return false;
        }
        let d = Var::d();
        let width = self.a_polys.iter().filter_map(|p| p.degree_in(d)).chain(a.degree_in(d)).max().unwrap_or(0) as usize + 1;
        let column = |p: &Polynomial| -> Vec<Rational> { (0..width).map(|k| p.coeff(d, k as u32).constant_value().unwrap_or_else(|| rat(0))).collect() };
        let mut cols: Vec<Vec<Rational>> = self.a_polys.iter().map(column).collect();
        cols.push(column(a));
        let rows: Vec<Vec<Rational>> = (0..width).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        nullspace(&rows, cols.len()).iter().any(|v| v.last().is_some_and(|x| x != &rat(0)))
    }
}

fn lam() -> Polynomial {
    Polynomial::var(Var::l())
}

fn del() -> Polynomial {
    Polynomial::var(Var::d())
}

fn unknown(prefix: &str, k: usize) -> Var {
    Var::new(&format!("{prefix}{k}"))
}

/// `Σ_k c_k ∂^k` with symbolic coefficients `c0..c_deg`.
fn ansatz(prefix: &str, deg: usize) -> Polynomial {
    (0..=deg).fold(Polynomial::zero(), |acc, k| acc + Polynomial::var(unknown(prefix, k)) * del().pow(k as u32))
}

/// `b₀(-λ)b₀(λ+∂) - b₀(∂)`.
pub fn b0_equation(b0: &Polynomial) -> Polynomial {
    let d = Var::d();
    b0.substitute_one(d, &-lam()) * b0.substitute_one(d, &(lam() + del())) - b0.clone()
}

/// Nonzero solutions of `b₀(-λ)b₀(λ+∂) = b₀(∂)` with `deg b₀ ≤ deg`.
///
/// The λ^{2e} coefficient is `(-1)^e c_e²` for the top unknown `c_e`, which
/// forces `c_e = 0` for `e ≥ 1`; what remains is `c₀² = c₀`.
pub fn solve_b0(deg: usize) -> Result<Vec<Polynomial>> {
    let mut eq = b0_equation(&ansatz("c", deg));
    for e in (1..=deg).rev() {
        let c = unknown("c", e);
        let top = eq.coeff(Var::l(), 2 * e as u32);
        let sign = if e % 2 == 0 { rat(1) } else { rat(-1) };
        let expected = Polynomial::term(sign, Monomial::from_pairs([(c, 2)]));
        if top != expected {
            return Err(Error::Classification(format!("unexpected top coefficient {}", top.canonical())));
        }
        eq = eq.substitute_one(c, &Polynomial::zero());
    }
    let c0 = Polynomial::var(unknown("c", 0));
    if eq != &c0 * &c0 - c0.clone() {
        return Err(Error::Classification(format!("unexpected residual {}", eq.canonical())));
    }
    // c₀(c₀ - 1) = 0 with c₀ ≠ 0.
    let b0 = Polynomial::one();
    debug_assert!(b0_equation(&b0).is_zero());
    Ok(vec![b0])
}

/// Left minus right side of the grade −1 equation, for given `a`, `b₀`:
/// s = 1: `(α₂-∂)a(-λ)b₀(λ+∂) - (α₁-∂)a(∂)`,
/// s = 2: `(α₂+λ)a(-λ)b₀(λ+∂) - (α₁+λ)a(∂)`.
pub fn a_equation(s: u8, a1: &Rational, a2: &Rational, a: &Polynomial, b0: &Polynomial) -> Result<Polynomial> {
    let d = Var::d();
    let (f1, f2) = match s {
        1 => (Polynomial::constant(a1.clone()) - del(), Polynomial::constant(a2.clone()) - del()),
        2 => (Polynomial::constant(a1.clone()) + lam(), Polynomial::constant(a2.clone()) + lam()),
        _ => return Err(Error::InvalidParameter(format!("s must be 1 or 2, got {s}"))),
    };
    Ok(f2 * a.substitute_one(d, &-lam()) * b0.substitute_one(d, &(lam() + del())) - f1 * a.clone())
}

/// All `(a, b₀)` with `deg ≤ deg`, `a ≠ 0`, `b₀ ≠ 0`; empty means rigid.
pub fn iso_rigidity_solve(s: u8, a1: &Rational, a2: &Rational, deg: usize) -> Result<Vec<IsoSolution>> {
    let mut out = Vec::new();
    for b0 in solve_b0(deg)? {
        // Column k: the equation with a = ∂^k; it is linear in a.
        let cols: Vec<Polynomial> = (0..=deg)
            .map(|k| a_equation(s, a1, a2, &del().pow(k as u32), &b0))
            .collect::<Result<_>>()?;
        let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (k, c) in cols.iter().enumerate() {
            for (m, v) in c.terms() {
                rows.entry(m.clone()).or_insert_with(|| vec![rat(0); deg + 1])[k] = v.clone();
            }
        }
        let matrix: Vec<Vec<Rational>> = rows.into_values().collect();
        let basis: Vec<Polynomial> = nullspace(&matrix, deg + 1)
            .into_iter()
            .map(|v| Polynomial::from_univariate(Var::d(), &v))
            .collect();
        if !basis.is_empty() {
            out.push(IsoSolution {
                b0: b0.canonical(),
                a_basis: basis.iter().map(Polynomial::canonical).collect(),
                a_polys: basis,
                b0_poly: b0,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b0_is_one() {
        for d in 0..=3 {
            assert_eq!(solve_b0(d).unwrap(), vec![Polynomial::one()]);
        }
        assert!(!b0_equation(&(Polynomial::one() + del())).is_zero());
    }

    #[test]
    fn rigidity_examples() {
        assert!(iso_rigidity_solve(1, &rat(1), &rat(2), 4).unwrap().is_empty());
        let sols = iso_rigidity_solve(1, &rat(1), &rat(1), 4).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].contains(&Polynomial::one(), &Polynomial::one()));
        assert!(!sols[0].contains(&del(), &Polynomial::one()));
        assert!(iso_rigidity_solve(2, &rat(0), &rat(3), 3).unwrap().is_empty());
        assert!(iso_rigidity_solve(2, &rat(3), &rat(3), 3).unwrap()[0].contains(&Polynomial::int(5), &Polynomial::one()));
        assert!(iso_rigidity_solve(3, &rat(0), &rat(0), 1).is_err());
    }
}
