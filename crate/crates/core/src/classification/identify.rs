//! Rescaling to the normalized gauge and comparison with the catalog.

use std::collections::BTreeMap;

use crate::arith::{fmt_rational, rat, Monomial, RationalFunction, Var};
use crate::catalog::make_b;
use crate::conformal::Param;
use crate::error::{Error, Result};

use super::seed::AlphaBranch;
use super::table::{table_of_algebra, Table};

/// Coefficient of the grlex-leading monomial in `(λ, ∂)`.
pub fn leading_coefficient(g: &RationalFunction) -> Result<RationalFunction> {
    let coeffs = g.num().coefficients_wrt(&[Var::l(), Var::d()]);
    let key = |m: &Monomial| (m.degree(), m.degree_in(Var::l()));
    let (_, c) = coeffs
        .iter()
        .max_by(|a, b| key(a.0).cmp(&key(b.0)))
        .ok_or_else(|| Error::Classification("leading coefficient of zero".into()))?;
    RationalFunction::new(c.clone(), g.den().clone())
}

/// Rescales `g_j ↦ s_j g_j` so that `g_{-1,j}` has leading coefficient
/// `j+1`: `s_{-1} = s_0 = 1`, `s_j = s_{j-1}(j+1) / lc(g_{-1,j})`. Entries
/// with an index above `max` or below grade -1 are dropped.
pub fn normalize(t: &Table, max: i64) -> Result<Table> {
    let mut s: BTreeMap<i64, RationalFunction> = BTreeMap::new();
    s.insert(-1, RationalFunction::one());
    s.insert(0, RationalFunction::one());
    for j in 1..=max {
        let lc = leading_coefficient(&t[&(-1, j)])?;
        let sj = s[&(j - 1)].scale(&rat(j + 1)).checked_div(&lc)?;
        s.insert(j, sj);
    }
    t.iter()
        .filter(|(&(i, j), _)| i <= max && j <= max && (-1..=max).contains(&(i + j)))
        .map(|(&(i, j), g)| Ok(((i, j), (g.clone() * s[&i].clone() * s[&j].clone()).checked_div(&s[&(i + j)])?)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum CaseTag {
    /// `B(1, α₁)`.
    Case1,
    /// `B(2, 0)`.
    Case2,
    /// `B(2, α₁)`, `α₁ ≠ 0`.
    Case3,
}

impl CaseTag {
    pub fn algebra(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "B(1,α₁)",
            CaseTag::Case2 => "B(2,0)",
            CaseTag::Case3 => "B(2,α₁)",
        }
    }

    /// The algebra with `α₁` filled in when it has a value.
    pub fn label(&self, alpha: &AlphaBranch) -> String {
        match (self, alpha) {
            (CaseTag::Case2, _) | (_, AlphaBranch::NonzeroSymbol) => self.algebra().into(),
            (CaseTag::Case1, AlphaBranch::Value(v)) => format!("B(1,{})", fmt_rational(v)),
            (CaseTag::Case3, AlphaBranch::Value(v)) => format!("B(2,{})", fmt_rational(v)),
        }
    }

    /// `(s, α)` of the catalog algebra.
    pub fn catalog(&self, alpha: &AlphaBranch) -> (u8, Param) {
        match self {
            CaseTag::Case1 => (1, catalog_param(alpha)),
            CaseTag::Case2 => (2, Param::Value(rat(0))),
            CaseTag::Case3 => (2, catalog_param(alpha)),
        }
    }

    pub fn parse(s: &str) -> Option<CaseTag> {
        match s {
            "case1" => Some(CaseTag::Case1),
            "case2" => Some(CaseTag::Case2),
            "case3" => Some(CaseTag::Case3),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
        }
    }
}

/// Entries where `t` and `reference` differ, as `(i, j, ours, theirs)`.
pub fn table_diff(t: &Table, reference: &Table) -> Vec<(i64, i64, String, String)> {
    let mut out = Vec::new();
    for (&(i, j), r) in reference {
        let ours = t.get(&(i, j));
        let same = ours.is_some_and(|g| (g.clone() - r.clone()).is_zero());
        if !same {
            out.push((i, j, ours.map(|g| g.pretty()).unwrap_or_else(|| "missing".into()), r.pretty()));
        }
    }
    out
}

pub fn catalog_param(alpha: &AlphaBranch) -> Param {
    match alpha {
        AlphaBranch::NonzeroSymbol => Param::symbolic_alpha(),
        AlphaBranch::Value(v) => Param::Value(v.clone()),
    }
}

/// The catalog algebra whose table agrees with `t` on `[-1, max]`.
pub fn identify(t: &Table, max: i64, alpha: &AlphaBranch) -> Result<CaseTag> {
    let mut diffs = Vec::new();
    for tag in [CaseTag::Case1, CaseTag::Case2, CaseTag::Case3] {
        if tag == CaseTag::Case3 && alpha.is_zero() {
            continue;
        }
        let (s, p) = tag.catalog(alpha);
        let reference = table_of_algebra(&make_b(s, p)?, max)?;
        let d = table_diff(t, &reference);
        if d.is_empty() {
            return Ok(tag);
        }
        let (i, j, ours, theirs) = &d[0];
        diffs.push(format!("{}: g_{{{i},{j}}} = {ours}, expected {theirs}", tag.algebra()));
    }
    Err(Error::Classification(format!("no catalog match: {}", diffs.join("; "))))
}
