//! Rank-one Virasoro modules `M_{Δ,α}` and `C_β`.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{Polynomial, Var};
use crate::conformal::{bracket, pair_at, ConformalAlgebra, Element, GeneratorId, Param};
use crate::error::{Error, Result};

/// The module generator.
pub const V: GeneratorId = GeneratorId::new('v', 0);

#[derive(Clone, Debug, PartialEq)]
pub enum VirModuleSpec {
    /// `L λ v = (α + ∂ + Δλ) v`.
    Free { delta: Param, alpha: Param },
    /// ∂ acts as β, `L λ v = 0`.
    Trivial { beta: Param },
}

impl VirModuleSpec {
    /// Both parameters free.
    pub fn symbolic_free() -> VirModuleSpec {
        VirModuleSpec::Free {
            delta: Param::Symbol(Var::new("Delta")),
            alpha: Param::Symbol(Var::new("am")),
        }
    }

    pub fn symbolic_trivial() -> VirModuleSpec {
        VirModuleSpec::Trivial { beta: Param::Symbol(Var::new("beta")) }
    }
}

type ActionRule = Arc<dyn Fn(GeneratorId) -> Result<Element> + Send + Sync>;

/// A rank-one module over Vir with generator `v`.
#[derive(Clone)]
pub struct VirModule {
    name: String,
    rule: ActionRule,
    /// Scalar by which ∂ acts, for torsion modules.
    d_scalar: Option<Polynomial>,
}

fn check_l(g: GeneratorId) -> Result<()> {
    if g.family == 'L' && g.index == 0 {
        Ok(())
    } else {
        Err(Error::InvalidGenerator(g.to_string(), "Vir-module".into()))
    }
}

pub fn make_vir_module(spec: VirModuleSpec) -> VirModule {
    match spec {
        VirModuleSpec::Free { delta, alpha } => {
            let c = alpha.to_poly() + Polynomial::var(Var::d()) + delta.to_poly() * Polynomial::var(Var::l());
            VirModule {
                name: format!("M({delta},{alpha})"),
                rule: Arc::new(move |g| {
                    check_l(g)?;
                    Ok(Element::term(V, c.clone()))
                }),
                d_scalar: None,
            }
        }
        VirModuleSpec::Trivial { beta } => VirModule {
            name: format!("C({beta})"),
            rule: Arc::new(|g| {
                check_l(g)?;
                Ok(Element::zero())
            }),
            d_scalar: Some(beta.to_poly()),
        },
    }
}

impl VirModule {
    /// A module with an arbitrary action `L λ v = value`. Used to feed the
    /// axiom checker tables that are not modules.
    pub fn with_action(name: impl Into<String>, value: Element) -> VirModule {
        VirModule {
            name: name.into(),
            rule: Arc::new(move |g| {
                check_l(g)?;
                Ok(value.clone())
            }),
            d_scalar: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(&self) -> Element {
        Element::gen(V)
    }

    fn reduce(&self, e: Element) -> Element {
        match &self.d_scalar {
            Some(b) => e.substitute_one(Var::d(), b),
            None => e,
        }
    }

    /// `x _P m` for an algebra element `x` and a module element `m`.
    pub fn action_at(&self, x: &Element, m: &Element, at: &Polynomial) -> Result<Element> {
        let out = pair_at(
            |g, h| {
                if h != V {
                    return Err(Error::InvalidGenerator(h.to_string(), self.name.clone()));
                }
                (self.rule)(g)
            },
            x,
            m,
            at,
        )?;
        Ok(self.reduce(out))
    }

    /// `x λ m`.
    pub fn action(&self, x: &Element, m: &Element) -> Result<Element> {
        self.action_at(x, m, &Polynomial::var(Var::l()))
    }

    /// `∂ m`, reduced for torsion modules.
    pub fn apply_d(&self, m: &Element) -> Element {
        self.reduce(m.apply_d())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleFailure {
    pub generators: (String, String),
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    pub algebra: String,
    pub module: String,
    pub pairs_checked: usize,
    pub failures: Vec<ModuleFailure>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `x λ (y μ v) - y μ (x λ v) - [x λ y]_{λ+μ} v` on generators up to
/// `max_index`.
pub fn module_residual(alg: &ConformalAlgebra, module: &VirModule, x: GeneratorId, y: GeneratorId) -> Result<Element> {
    let (l, m) = (Polynomial::var(Var::l()), Polynomial::var(Var::m()));
    let (ex, ey, v) = (Element::gen(x), Element::gen(y), module.generator());
    let first = module.action_at(&ex, &module.action_at(&ey, &v, &m)?, &l)?;
    let second = module.action_at(&ey, &module.action_at(&ex, &v, &l)?, &m)?;
    let third = module.action_at(&bracket(alg, &ex, &ey)?, &v, &(&l + &m))?;
    Ok(first.sub(&second).sub(&third))
}

pub fn check_module_axioms(alg: &ConformalAlgebra, module: &VirModule, max_index: i64) -> Result<ModuleReport> {
    let gens = alg.generators_up_to(max_index);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for &x in &gens {
        for &y in &gens {
            pairs += 1;
            let r = module_residual(alg, module, x, y)?;
            if !r.is_zero() {
                failures.push(ModuleFailure {
                    generators: (x.to_string(), y.to_string()),
                    residual: r.canonical(),
                });
            }
        }
    }
    Ok(ModuleReport {
        algebra: alg.name().to_string(),
        module: module.name().to_string(),
        pairs_checked: pairs,
        failures,
    })
}
