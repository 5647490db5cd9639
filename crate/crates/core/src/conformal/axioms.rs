//! Skew-symmetry and Jacobi checkers returning residuals as witnesses.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Polynomial, Var};
use crate::error::Result;

use super::algebra::ConformalAlgebra;
use super::bracket::bracket_at;
use super::element::{Element, GeneratorId, TermJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Ok,
    /// Nonzero residual.
    Witness(Element),
}

impl Check {
    pub fn is_ok(&self) -> bool {
        matches!(self, Check::Ok)
    }

    fn from_residual(r: Element) -> Check {
        if r.is_zero() {
            Check::Ok
        } else {
            Check::Witness(r)
        }
    }
}

fn lam() -> Polynomial {
    Polynomial::var(Var::l())
}

fn mu() -> Polynomial {
    Polynomial::var(Var::m())
}

/// `[a λ b] + [b μ a]|_{μ = -λ-∂}`.
pub fn skew_residual(alg: &ConformalAlgebra, i: GeneratorId, j: GeneratorId) -> Result<Element> {
    let (x, y) = (Element::gen(i), Element::gen(j));
    let lhs = bracket_at(alg, &x, &y, &lam())?;
    let swapped = bracket_at(alg, &y, &x, &mu())?;
    let reflected = swapped.substitute_one(Var::m(), &(-lam() - Polynomial::var(Var::d())));
    Ok(lhs.add(&reflected))
}

pub fn check_skew(alg: &ConformalAlgebra, i: GeneratorId, j: GeneratorId) -> Result<Check> {
    skew_residual(alg, i, j).map(Check::from_residual)
}

/// `[a λ [b μ c]] - [[a λ b] _{λ+μ} c] - [b μ [a λ c]]`.
pub fn jacobi_residual(
    alg: &ConformalAlgebra,
    i: GeneratorId,
    j: GeneratorId,
    k: GeneratorId,
) -> Result<Element> {
    let (x, y, z) = (Element::gen(i), Element::gen(j), Element::gen(k));
    let yz = bracket_at(alg, &y, &z, &mu())?;
    let t1 = bracket_at(alg, &x, &yz, &lam())?;
    let xy = bracket_at(alg, &x, &y, &lam())?;
    let t2 = bracket_at(alg, &xy, &z, &(lam() + mu()))?;
    let xz = bracket_at(alg, &x, &z, &lam())?;
    let t3 = bracket_at(alg, &y, &xz, &mu())?;
    Ok(t1.sub(&t2).sub(&t3))
}

pub fn check_jacobi(
    alg: &ConformalAlgebra,
    i: GeneratorId,
    j: GeneratorId,
    k: GeneratorId,
) -> Result<Check> {
    jacobi_residual(alg, i, j, k).map(Check::from_residual)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub generators: Vec<GeneratorId>,
    pub residual: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub algebra: String,
    pub max_index: i64,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive skew check on all generator pairs and Jacobi check on all
/// triples with index at most `max_index`. Triples are checked in
/// parallel; the report is in index order.
pub fn verify_axioms(alg: &ConformalAlgebra, max_index: i64) -> Result<AxiomReport> {
    let gens = alg.generators_up_to(max_index);
    let pairs: Vec<(GeneratorId, GeneratorId)> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .collect();
    let triples: Vec<(GeneratorId, GeneratorId, GeneratorId)> = pairs
        .iter()
        .flat_map(|&(a, b)| gens.iter().map(move |&c| (a, b, c)))
        .collect();
    let skew: Vec<Option<AxiomFailure>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let r = skew_residual(alg, a, b)?;
            Ok((!r.is_zero()).then(|| AxiomFailure {
                axiom: "skew-symmetry",
                generators: vec![a, b],
                residual: r.to_json_terms(),
            }))
        })
        .collect::<Result<_>>()?;
    let jacobi: Vec<Option<AxiomFailure>> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let r = jacobi_residual(alg, a, b, c)?;
            Ok((!r.is_zero()).then(|| AxiomFailure {
                axiom: "jacobi",
                generators: vec![a, b, c],
                residual: r.to_json_terms(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(AxiomReport {
        algebra: alg.name().to_string(),
        max_index,
        pairs_checked: pairs.len(),
        triples_checked: triples.len(),
        failures: skew.into_iter().chain(jacobi).flatten().collect(),
    })
}
