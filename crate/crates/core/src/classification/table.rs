//! Structure-function tables `(i, j) ↦ g_{i,j}(λ, ∂)` and the Jacobi
//! identity on the coefficients.

use std::collections::BTreeMap;

use crate::arith::{Polynomial, RationalFunction, Var};
use crate::conformal::{ConformalAlgebra, GeneratorId};
use crate::error::{Error, Result};

pub type Table = BTreeMap<(i64, i64), RationalFunction>;

pub fn lam() -> Polynomial {
    Polynomial::var(Var::l())
}

pub fn mu() -> Polynomial {
    Polynomial::var(Var::m())
}

pub fn del() -> Polynomial {
    Polynomial::var(Var::d())
}

/// `g(x, y)`: λ ↦ x, ∂ ↦ y simultaneously.
pub fn eval_at(g: &RationalFunction, x: &Polynomial, y: &Polynomial) -> Result<RationalFunction> {
    let mut b = BTreeMap::new();
    b.insert(Var::l(), x.clone());
    b.insert(Var::d(), y.clone());
    g.substitute(&b)
}

/// `-g(-λ-∂, ∂)`, the partner entry forced by skew-symmetry.
pub fn skew(g: &RationalFunction) -> Result<RationalFunction> {
    Ok(-eval_at(g, &(-lam() - del()), &del())?)
}

/// `f / p` for a polynomial `p` dividing the numerator of `f`.
pub fn div_exact(f: &RationalFunction, p: &RationalFunction) -> Result<RationalFunction> {
    let num = (f.num() * p.den()).exact_div(p.num())?;
    RationalFunction::new(num, f.den().clone())
}

/// The entry `g_{i,j}`: zero below grade −1, `None` if not yet known.
pub fn entry(t: &Table, i: i64, j: i64) -> Option<RationalFunction> {
    if i + j < -1 {
        Some(RationalFunction::zero())
    } else {
        t.get(&(i, j)).cloned()
    }
}

fn product(
    t: &Table,
    (i1, j1, x1, y1): (i64, i64, Polynomial, Polynomial),
    (i2, j2, x2, y2): (i64, i64, Polynomial, Polynomial),
) -> Option<Result<RationalFunction>> {
    if i1 + j1 < -1 || i2 + j2 < -1 {
        return Some(Ok(RationalFunction::zero()));
    }
    let (a, b) = (entry(t, i1, j1)?, entry(t, i2, j2)?);
    Some((|| Ok(eval_at(&a, &x1, &y1)? * eval_at(&b, &x2, &y2)?))())
}

/// Coefficient of `g_{i+j+k}` in
/// `[g_i λ [g_j μ g_k]] - [[g_i λ g_j]_{λ+μ} g_k] - [g_j μ [g_i λ g_k]]`,
/// or `None` if an entry is missing.
pub fn jacobi(t: &Table, i: i64, j: i64, k: i64) -> Option<Result<RationalFunction>> {
    let (l, m, d) = (lam(), mu(), del());
    let first = product(t, (j, k, m.clone(), &l + &d), (i, j + k, l.clone(), d.clone()))?;
    let second = product(t, (i, j, l.clone(), -&l - &m), (i + j, k, &l + &m, d.clone()))?;
    let third = product(t, (i, k, l.clone(), &m + &d), (j, i + k, m.clone(), d.clone()))?;
    Some((|| Ok(first? - second? - third?))())
}

/// Checks skew-symmetry and Jacobi on all index combinations in
/// `[-1, max_index]` whose entries are present. Returns the number of
/// instances checked or the first failing one.
pub fn verify_table(t: &Table, max_index: i64) -> Result<usize> {
    let mut checked = 0;
    for i in -1..=max_index {
        for j in -1..=max_index {
            if let (Some(a), Some(b)) = (entry(t, i, j), entry(t, j, i)) {
                checked += 1;
                if a != skew(&b)? {
                    return Err(Error::Classification(format!("skew-symmetry fails at ({i},{j})")));
                }
            }
            for k in -1..=max_index {
                if let Some(r) = jacobi(t, i, j, k) {
                    checked += 1;
                    let r = r?;
                    if !r.is_zero() {
                        return Err(Error::Classification(format!(
                            "Jacobi fails at ({i},{j},{k}): {}",
                            r.canonical()
                        )));
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Structure functions of a graded algebra with one generator per grade,
/// for indices in `[-1, n]`.
pub fn table_of_algebra(alg: &ConformalAlgebra, n: i64) -> Result<Table> {
    let mut t = Table::new();
    for i in -1..=n {
        for j in -1..=n {
            if i + j >= -1 && i + j <= n {
                let (a, b) = (GeneratorId::new(alg.family(), i), GeneratorId::new(alg.family(), j));
                let e = alg.structure(a, b)?;
                t.insert((i, j), RationalFunction::from_poly(e.get(&GeneratorId::new(alg.family(), i + j))));
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_b;
    use crate::conformal::Param;

    fn table_of(s: u8, n: i64) -> Table {
        table_of_algebra(&make_b(s, Param::symbolic_alpha()).unwrap(), n).unwrap()
    }

    #[test]
    fn catalog_tables_pass() {
        for s in [1, 2] {
            assert!(verify_table(&table_of(s, 3), 3).unwrap() > 0);
        }
    }

    #[test]
    fn broken_table_fails() {
        let mut t = table_of(2, 2);
        t.insert((1, 1), RationalFunction::from_poly(lam()));
        assert!(verify_table(&t, 2).is_err());
    }
}
