//! Concrete algebras: Virasoro, B(1, α), B(2, α), gc₁, and rank-one
//! Virasoro modules.

pub mod module;

use std::sync::Arc;

use crate::arith::{rat, Polynomial, Rational, Var};
use crate::conformal::{ConformalAlgebra, Element, GeneratorId, Param};
use crate::error::{Error, Result};

pub use module::{check_module_axioms, make_vir_module, ModuleReport, VirModule, VirModuleSpec};

fn lam() -> Polynomial {
    Polynomial::var(Var::l())
}

fn del() -> Polynomial {
    Polynomial::var(Var::d())
}

/// `[L λ L] = (∂ + 2λ) L`.
pub fn make_virasoro() -> ConformalAlgebra {
    let l = GeneratorId::new('L', 0);
    ConformalAlgebra::new(
        "Vir",
        'L',
        0,
        Some(0),
        true,
        None,
        Arc::new(move |_, _| Element::term(l, del() + lam().scale(&rat(2)))),
    )
}

/// `(j-i)α + (i+j+2)λ + (i+1)∂`, the grade-(i+j) coefficient shared by
/// both families on their generic rows.
pub fn block_coefficient(i: i64, j: i64, alpha: &Polynomial) -> Polynomial {
    alpha.scale(&rat(j - i)) + lam().scale(&rat(i + j + 2)) + del().scale(&rat(i + 1))
}

/// `-c(-λ-∂, ∂)`: the coefficient of `[b λ a]` forced by skew-symmetry
/// from the coefficient `c` of `[a λ b]`.
pub fn skew_partner(c: &Polynomial) -> Polynomial {
    -c.substitute_one(Var::l(), &(-lam() - del()))
}

fn block_two_rule(alpha: Polynomial) -> impl Fn(GeneratorId, GeneratorId) -> Element + Send + Sync {
    move |a, b| {
        let (i, j) = (a.index, b.index);
        let c = block_coefficient(i, j, &alpha);
        if i + j < -1 {
            assert!(c.is_zero(), "B(2,α) coefficient must vanish at grade -2");
            return Element::zero();
        }
        Element::term(GeneratorId::g(i + j), c)
    }
}

/// Rows exactly as listed for B(1, α); `[G_i λ G_{-1}]` for `i ≥ 0` follows
/// from skew-symmetry applied to the stated `[G_{-1} λ G_i]` row.
fn block_one_stated(i: i64, j: i64, alpha: &Polynomial) -> Element {
    match (i, j) {
        (-1, -1) => Element::zero(),
        (-1, 0) => Element::term(GeneratorId::g(-1), alpha - &del()),
        (-1, j) => Element::term(GeneratorId::g(j - 1), Polynomial::int(j + 1)),
        (i, j) => Element::term(GeneratorId::g(i + j), block_coefficient(i, j, alpha)),
    }
}

fn block_one_rule(alpha: Polynomial) -> impl Fn(GeneratorId, GeneratorId) -> Element + Send + Sync {
    move |a, b| {
        let (i, j) = (a.index, b.index);
        if j == -1 && i >= 0 {
            block_one_stated(-1, i, &alpha).map(skew_partner)
        } else {
            block_one_stated(i, j, &alpha)
        }
    }
}

/// B(s, α) on generators `G_i`, `i ≥ -1`.
pub fn make_b(s: u8, alpha: Param) -> Result<ConformalAlgebra> {
    let a = alpha.to_poly();
    let rule: crate::conformal::StructureRule = match s {
        1 => Arc::new(block_one_rule(a)),
        2 => Arc::new(block_two_rule(a)),
        _ => return Err(Error::InvalidParameter(format!("B(s, α) needs s ∈ {{1, 2}}, got {s}"))),
    };
    Ok(ConformalAlgebra::new(format!("B({s},{alpha})"), 'G', -1, None, true, Some(alpha), rule))
}

/// gc₁ on generators `J^m = x^m`, `m ≥ 0`:
/// `[J^m λ J^n] = Σ_s C(m,s)(λ+∂)^s J^{m+n-s} - Σ_s C(n,s)(-λ)^s J^{m+n-s}`.
pub fn make_gc1() -> ConformalAlgebra {
    let rule = |a: GeneratorId, b: GeneratorId| {
        let (m, n) = (a.index as u32, b.index as u32);
        let shift = lam() + del();
        let neg = -lam();
        let mut out = Element::zero();
        for s in 0..=m {
            let c = Rational::from_integer(crate::arith::rational::binomial(m, s));
            out.add_term(GeneratorId::new('J', (m + n - s) as i64), shift.pow(s).scale(&c));
        }
        for s in 0..=n {
            let c = Rational::from_integer(crate::arith::rational::binomial(n, s));
            out.add_term(GeneratorId::new('J', (m + n - s) as i64), -neg.pow(s).scale(&c));
        }
        out
    };
    ConformalAlgebra::new("gc1", 'J', 0, None, false, None, Arc::new(rule))
}

/// Parses `vir`, `gc1`, `B1:alpha=<r|sym>`, `B2:alpha=<r|sym>`.
pub fn parse_descriptor(desc: &str) -> Result<ConformalAlgebra> {
    let bad = || Error::BadDescriptor(desc.to_string());
    match desc.trim() {
        "vir" => Ok(make_virasoro()),
        "gc1" => Ok(make_gc1()),
        other => {
            let (head, tail) = other.split_once(':').ok_or_else(bad)?;
            let s = match head {
                "B1" => 1,
                "B2" => 2,
                _ => return Err(bad()),
            };
            let value = tail.strip_prefix("alpha=").ok_or_else(bad)?;
            make_b(s, Param::parse_alpha(value)?)
        }
    }
}
