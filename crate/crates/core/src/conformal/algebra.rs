use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{fmt_rational, Polynomial, Rational, Var};
use crate::error::{Error, Result};

use super::element::{Element, GeneratorId};

/// A scalar parameter that is either a rational value or a free symbol.
#[derive(Clone, PartialEq, Eq)]
pub enum Param {
    Value(Rational),
    Symbol(Var),
}

impl Param {
    pub fn symbolic_alpha() -> Param {
        Param::Symbol(Var::a())
    }

    pub fn to_poly(&self) -> Polynomial {
        match self {
            Param::Value(r) => Polynomial::constant(r.clone()),
            Param::Symbol(v) => Polynomial::var(*v),
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Param::Value(r) => Some(r),
            Param::Symbol(_) => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Param::Symbol(_))
    }

    /// `sym` for symbolic α, else a rational literal.
    pub fn parse_alpha(s: &str) -> Result<Param> {
        if s.trim() == "sym" {
            Ok(Param::symbolic_alpha())
        } else {
            Ok(Param::Value(crate::arith::parse_rational(s)?))
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(r) => f.write_str(&fmt_rational(r)),
            Param::Symbol(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type StructureRule = Arc<dyn Fn(GeneratorId, GeneratorId) -> Element + Send + Sync>;

/// A Lie conformal algebra given by a generator family and a closed-form
/// structure rule `(g_i, g_j) ↦ [g_i λ g_j]` (coefficients in λ, ∂).
#[derive(Clone)]
pub struct ConformalAlgebra {
    name: String,
    family: char,
    index_min: i64,
    index_max: Option<i64>,
    graded: bool,
    alpha: Option<Param>,
    rule: StructureRule,
    overrides: Arc<BTreeMap<(i64, i64), Element>>,
}

impl ConformalAlgebra {
    pub fn new(
        name: impl Into<String>,
        family: char,
        index_min: i64,
        index_max: Option<i64>,
        graded: bool,
        alpha: Option<Param>,
        rule: StructureRule,
    ) -> ConformalAlgebra {
        ConformalAlgebra {
            name: name.into(),
            family,
            index_min,
            index_max,
            graded,
            alpha,
            rule,
            overrides: Arc::new(BTreeMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> char {
        self.family
    }

    pub fn index_min(&self) -> i64 {
        self.index_min
    }

    pub fn index_max(&self) -> Option<i64> {
        self.index_max
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn alpha(&self) -> Option<&Param> {
        self.alpha.as_ref()
    }

    pub fn gen(&self, index: i64) -> GeneratorId {
        GeneratorId::new(self.family, index)
    }

    pub fn validate(&self, g: GeneratorId) -> Result<()> {
        let in_range = g.family == self.family
            && g.index >= self.index_min
            && self.index_max.is_none_or(|m| g.index <= m);
        if in_range {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(g.to_string(), self.name.clone()))
        }
    }

    /// Generators with index in `[index_min, max_index]`, clipped to the
    /// index set.
    pub fn generators_up_to(&self, max_index: i64) -> Vec<GeneratorId> {
        let hi = self.index_max.map_or(max_index, |m| m.min(max_index));
        (self.index_min..=hi).map(|i| self.gen(i)).collect()
    }

    /// `[g_i λ g_j]` with coefficients in λ and ∂.
    pub fn structure(&self, a: GeneratorId, b: GeneratorId) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        if let Some(e) = self.overrides.get(&(a.index, b.index)) {
            return Ok(e.clone());
        }
        Ok((self.rule)(a, b))
    }

    /// Copy of the algebra with one structure entry replaced. Only meant for
    /// exercising the checkers on deliberately broken tables.
    pub fn with_override(&self, i: i64, j: i64, value: Element) -> ConformalAlgebra {
        let mut ov = (*self.overrides).clone();
        ov.insert((i, j), value);
        ConformalAlgebra {
            name: format!("{} (modified)", self.name),
            overrides: Arc::new(ov),
            ..self.clone()
        }
    }

    /// Rank of each graded piece in `[index_min, max_index]`, or `None` for
    /// an algebra without a grading.
    pub fn graded_ranks(&self, max_index: i64) -> Option<Vec<(i64, usize)>> {
        if !self.graded {
            return None;
        }
        let gens = self.generators_up_to(max_index);
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for g in gens {
            *counts.entry(g.index).or_default() += 1;
        }
        Some(counts.into_iter().collect())
    }
}

impl fmt::Debug for ConformalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConformalAlgebra")
            .field("name", &self.name)
            .field("family", &self.family)
            .field("index_min", &self.index_min)
            .field("index_max", &self.index_max)
            .finish()
    }
}
