//! Local nilpotence of `ad x` on a finite probe set.

use serde::Serialize;

use crate::arith::{Polynomial, Rational, Var};
use crate::conformal::{bracket_at, ConformalAlgebra, Element};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parameters {
    /// `λ₁, …, λₙ`, one per application.
    Independent,
    /// The same λ in every application.
    Equal,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    /// Least `n ≤ P` with `(ad x)^n(y) = 0`.
    pub vanishes_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotentVerdict {
    pub element: String,
    pub power_cap: usize,
    pub nilpotent_on_probes: bool,
    pub probes: Vec<ProbeResult>,
}

impl NilpotentVerdict {
    pub fn witness(&self) -> Option<&ProbeResult> {
        self.probes.iter().find(|p| p.vanishes_at.is_none())
    }
}

fn param(k: usize, mode: Parameters) -> Polynomial {
    match mode {
        Parameters::Independent => Polynomial::v(&format!("l{k}")),
        Parameters::Equal => Polynomial::var(Var::l()),
    }
}

/// A nonzero integer value for the k-th parameter, used to detect
/// nonvanishing cheaply. Evaluation commutes with every step of the
/// bracket, so a nonzero specialization proves the symbolic value nonzero.
fn sample(k: usize) -> Polynomial {
    Polynomial::constant(Rational::from_integer((2 * k as i64 + 3).into()))
}

/// Least `n ≤ cap` with `(ad x)^n(y) = 0`, if any.
pub fn vanishing_power(alg: &ConformalAlgebra, x: &Element, y: &Element, cap: usize, mode: Parameters) -> Result<Option<usize>> {
    let mut symbolic = y.clone();
    let mut special = y.clone();
    let mut symbolic_at = 0;
    for n in 1..=cap {
        if mode == Parameters::Independent {
            special = bracket_at(alg, x, &special, &sample(n))?;
            if !special.is_zero() {
                continue;
            }
        }
        while symbolic_at < n {
            symbolic_at += 1;
            symbolic = bracket_at(alg, x, &symbolic, &param(symbolic_at, mode))?;
        }
        if symbolic.is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Applies `ad x` to each probe up to `cap` times. The element passes iff
/// every probe vanishes; a failing probe is a witness.
pub fn locally_nilpotent_test(
    alg: &ConformalAlgebra,
    x: &Element,
    probes: &[Element],
    cap: usize,
    mode: Parameters,
) -> Result<NilpotentVerdict> {
    let mut results = Vec::new();
    for y in probes {
        let v = vanishing_power(alg, x, y, cap, mode)?;
        results.push(ProbeResult { probe: y.canonical(), vanishes_at: v });
    }
    Ok(NilpotentVerdict {
        element: x.canonical(),
        power_cap: cap,
        nilpotent_on_probes: results.iter().all(|r| r.vanishes_at.is_some()),
        probes: results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_b;
    use crate::conformal::{GeneratorId, Param};

    fn g(i: i64) -> Element {
        Element::gen(GeneratorId::g(i))
    }

    #[test]
    fn examples() {
        let b2 = make_b(2, Param::symbolic_alpha()).unwrap();
        for mode in [Parameters::Independent, Parameters::Equal] {
            assert_eq!(vanishing_power(&b2, &g(-1), &g(3), 8, mode).unwrap(), Some(5));
            assert_eq!(vanishing_power(&b2, &g(0), &g(1), 6, mode).unwrap(), None);
            assert_eq!(vanishing_power(&b2, &Element::zero(), &g(1), 3, mode).unwrap(), Some(1));
        }
    }

    #[test]
    fn verdicts() {
        let b1 = make_b(1, Param::symbolic_alpha()).unwrap();
        let probes: Vec<Element> = (-1..=3).map(g).collect();
        let d = Polynomial::var(Var::d());
        let x = Element::term(GeneratorId::g(-1), d.pow(2) + d);
        let v = locally_nilpotent_test(&b1, &x, &probes, 6, Parameters::Independent).unwrap();
        assert!(v.nilpotent_on_probes);
        let v = locally_nilpotent_test(&b1, &g(1), &probes, 4, Parameters::Independent).unwrap();
        assert!(!v.nilpotent_on_probes);
        assert!(v.witness().is_some());
    }
}
