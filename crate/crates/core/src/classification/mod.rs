//! Re-derivation of the graded classification from the functional
//! equations imposed by the Jacobi identity.

pub mod identify;
pub mod propagate;
pub mod seed;
pub mod solver;
pub mod table;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{fmt_rational, Polynomial};
use crate::error::Result;

pub use identify::{identify, normalize, CaseTag};
pub use propagate::{propagate, DeadBranch, Propagated};
pub use seed::{derive_grading_constants, DeltaInjection, solve_g1_minus1, AlphaBranch, GradingConstants, SeedCase, SeedOutcome};
pub use table::{verify_table, Table};

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub i: i64,
    pub j: i64,
    pub g: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub alpha: String,
    pub a0_nonzero: bool,
    /// `case1`, `case2`, `case3` or `contradiction`.
    pub branch: String,
    pub params: BTreeMap<String, String>,
    pub delta: BTreeMap<i64, String>,
    pub g_1_minus1: Option<String>,
    pub identified_as: Option<String>,
    pub witness: Option<String>,
    pub jacobi_checked: usize,
    pub table: Vec<TableEntry>,
    pub discarded: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub max_degree: i64,
    pub ansatz_degree: usize,
    pub grading: GradingConstants,
    pub branches: Vec<BranchReport>,
}

impl ClassificationReport {
    /// Distinct outcomes. A specialization such as B(1,0) is absorbed by its
    /// family when a symbolic branch reached the same case.
    pub fn identified(&self) -> Vec<String> {
        let symbolic = AlphaBranch::NonzeroSymbol.label();
        let general: Vec<&str> = self.surviving().iter().filter(|b| b.alpha == symbolic).map(|b| b.branch.as_str()).collect();
        let mut v: Vec<String> = self
            .surviving()
            .iter()
            .map(|b| match CaseTag::parse(&b.branch) {
                Some(tag) if general.contains(&b.branch.as_str()) => tag.algebra().to_string(),
                _ => b.identified_as.clone().unwrap_or_default(),
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn surviving(&self) -> Vec<&BranchReport> {
        self.branches.iter().filter(|b| b.identified_as.is_some()).collect()
    }
}

fn params_json(p: &BTreeMap<crate::arith::Var, Polynomial>) -> BTreeMap<String, String> {
    p.iter().map(|(v, x)| (v.to_string(), x.pretty())).collect()
}

fn table_json(t: &Table) -> Vec<TableEntry> {
    t.iter().map(|(&(i, j), g)| TableEntry { i, j, g: g.pretty() }).collect()
}

/// Runs one `(α₁, a⁰)` branch through seed, propagation, normalization and
/// identification.
pub fn classify_branch(alpha: &AlphaBranch, a0_nonzero: bool, max: i64, degree: usize) -> Result<Vec<BranchReport>> {
    let blank = || BranchReport {
        alpha: alpha.label(),
        a0_nonzero,
        branch: "contradiction".into(),
        params: BTreeMap::new(),
        delta: BTreeMap::new(),
        g_1_minus1: None,
        identified_as: None,
        witness: None,
        jacobi_checked: 0,
        table: vec![],
        discarded: vec![],
    };
    let mut out = Vec::new();
    for o in solve_g1_minus1(alpha, a0_nonzero, degree, &DeltaInjection::None)? {
        match o {
            SeedOutcome::Contradiction { params, witness, .. } => {
                out.push(BranchReport { params: params_json(&params), witness: Some(witness), ..blank() });
            }
            SeedOutcome::Case(seed) => {
                let (prop, dead) = propagate(alpha, &seed, max, degree as u32)?;
                let normalized = normalize(&prop.table, max)?;
                let tag = identify(&normalized, max, alpha)?;
                out.push(BranchReport {
                    branch: tag.name().into(),
                    delta: prop.deltas.iter().map(|(&j, d)| (j, fmt_rational(d))).collect(),
                    g_1_minus1: Some(seed.g.pretty()),
                    identified_as: Some(tag.label(alpha)),
                    jacobi_checked: prop.jacobi_checked,
                    table: table_json(&normalized),
                    discarded: dead.iter().map(|d| format!("grade {}: {}", d.grade, d.reason)).collect(),
                    ..blank()
                });
            }
        }
    }
    Ok(out)
}

/// Every branch `α₁ ∈ alphas`, `a⁰ ≠ 0` and `a⁰ = 0`, through grade `max`.
pub fn classify_all(alphas: &[AlphaBranch], max: i64, degree: usize) -> Result<ClassificationReport> {
    let jobs: Vec<(AlphaBranch, bool)> =
        alphas.iter().flat_map(|a| [(a.clone(), true), (a.clone(), false)]).collect();
    let runs: Vec<Vec<BranchReport>> =
        jobs.par_iter().map(|(a, z)| classify_branch(a, *z, max, degree)).collect::<Result<_>>()?;
    Ok(ClassificationReport {
        max_degree: max,
        ansatz_degree: degree,
        grading: derive_grading_constants(max)?,
        branches: runs.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn symbolic_alpha_small_bound() {
        let r = classify_all(&[AlphaBranch::NonzeroSymbol, AlphaBranch::Value(rat(0))], 3, 3).unwrap();
        assert_eq!(r.identified(), vec!["B(1,α₁)", "B(2,0)", "B(2,α₁)"]);
        assert_eq!(r.surviving().len(), 4);
        for b in r.surviving() {
            assert_eq!(b.delta[&2], "4");
            assert_eq!(b.delta[&3], "5");
        }
    }
}
