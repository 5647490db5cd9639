//! λ-bracket evaluation by conformal sesquilinearity:
//! `[p(∂)a _P q(∂)b] = p(-P) q(P+∂) [a _λ b]|_{λ=P}`.

use std::collections::BTreeMap;


use crate::arith::{rat, Polynomial, Rational, Var};
use crate::error::Result;

use super::algebra::ConformalAlgebra;
use super::element::{Element, GeneratorId};

/// Extends a generator-level rule bilinearly and sesquilinearly, with the
/// bracket parameter set to `at` (which must not involve ∂).
pub fn pair_at<F>(rule: F, x: &Element, y: &Element, at: &Polynomial) -> Result<Element>
where
    F: Fn(GeneratorId, GeneratorId) -> Result<Element>,
{
    let d = Var::d();
    assert!(!at.involves(d), "bracket parameter must not involve ∂");
    let minus_at = -at;
    let shifted = at + &Polynomial::var(d);
    let mut lambda_to_at = BTreeMap::new();
    lambda_to_at.insert(Var::l(), at.clone());
    let mut out = Element::zero();
    for (ga, p) in x.terms() {
        let left = p.substitute_one(d, &minus_at);
        if left.is_zero() {
            continue;
        }
        for (gb, q) in y.terms() {
            let right = q.substitute_one(d, &shifted);
            let factor = &left * &right;
            if factor.is_zero() {
                continue;
            }
            let s = rule(*ga, *gb)?;
            let is_lambda = at == &Polynomial::var(Var::l());
            for (gc, c) in s.terms() {
                let c = if is_lambda { c.clone() } else { c.substitute(&lambda_to_at) };
                out.add_term(*gc, &factor * &c);
            }
        }
    }
    Ok(out)
}

/// `[x _P y]` in algebra `a`.
pub fn bracket_at(a: &ConformalAlgebra, x: &Element, y: &Element, at: &Polynomial) -> Result<Element> {
    pair_at(|g, h| a.structure(g, h), x, y, at)
}

/// `[x λ y]`.
pub fn bracket(a: &ConformalAlgebra, x: &Element, y: &Element) -> Result<Element> {
    bracket_at(a, x, y, &Polynomial::var(Var::l()))
}

/// `x_(n) y = n! · (coefficient of λⁿ in [x λ y])`. The inputs must not
/// involve λ.
pub fn jth_product(a: &ConformalAlgebra, x: &Element, y: &Element, n: u32) -> Result<Element> {
    let b = bracket(a, x, y)?;
    let fact = Rational::from_integer(crate::arith::rational::factorial(n));
    Ok(b.coeff(Var::l(), n).scale(&fact))
}

/// All nonzero j-th products, indexed by j.
pub fn all_products(a: &ConformalAlgebra, x: &Element, y: &Element) -> Result<Vec<(u32, Element)>> {
    let b = bracket(a, x, y)?;
    let top = b.degree_in(Var::l()).unwrap_or(0);
    Ok((0..=top)
        .map(|n| {
            let fact = Rational::from_integer(crate::arith::rational::factorial(n));
            (n, b.coeff(Var::l(), n).scale(&fact))
        })
        .filter(|(_, e)| !e.is_zero())
        .collect())
}

/// `Σ_n (x_(n) y) λⁿ / n!`, the inverse of [`all_products`].
pub fn from_products(products: &[(u32, Element)]) -> Element {
    let l = Polynomial::var(Var::l());
    products.iter().fold(Element::zero(), |acc, (n, e)| {
        let fact = Rational::from_integer(crate::arith::rational::factorial(*n));
        let w = l.pow(*n).scale(&(rat(1) / fact));
        acc.add(&e.mul_poly(&w))
    })
}
