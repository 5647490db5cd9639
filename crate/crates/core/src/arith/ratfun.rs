use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::poly::{univariate_gcd, Polynomial};
use super::rational::Rational;
use super::var::Var;
use crate::error::{Error, Result};

/// Quotient of polynomials.
///
/// Normalization removes common monomial factors, exact polynomial
/// quotients and common univariate factors, then scales the denominator
/// to leading coefficient 1. No multivariate gcd is attempted, so two equal
/// values need not be structurally identical; `==` cross-multiplies.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = normalize(num, den);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> RationalFunction {
        RationalFunction::from_poly(Polynomial::zero())
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, if the denominator normalized to 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn into_polynomial(self) -> Result<Polynomial> {
        if self.den.is_one() {
            Ok(self.num)
        } else {
            self.num.exact_div(&self.den)
        }
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::one().checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial>) -> Result<RationalFunction> {
        RationalFunction::new(self.num.substitute(bindings), self.den.substitute(bindings))
    }

    pub fn substitute_one(&self, v: Var, value: &Polynomial) -> Result<RationalFunction> {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    /// Coefficient of `v^k`; requires a denominator free of `v`.
    pub fn coeff(&self, v: Var, k: u32) -> Result<RationalFunction> {
        if self.den.involves(v) {
            return Err(Error::InvalidParameter(format!(
                "denominator {} involves {v}",
                self.den
            )));
        }
        RationalFunction::new(self.num.coeff(v, k), self.den.clone())
    }

    /// Groups the numerator by power products of `vars`. The denominator
    /// must not involve them.
    pub fn coefficients_wrt(
        &self,
        vars: &[Var],
    ) -> Result<BTreeMap<super::poly::Monomial, RationalFunction>> {
        if vars.iter().any(|&v| self.den.involves(v)) {
            return Err(Error::InvalidParameter(format!(
                "denominator {} involves a grouping variable",
                self.den
            )));
        }
        self.num
            .coefficients_wrt(vars)
            .into_iter()
            .map(|(m, c)| Ok((m, RationalFunction::new(c, self.den.clone())?)))
            .collect()
    }

    pub fn canonical(&self) -> String {
        if self.den.is_one() {
            self.num.canonical()
        } else {
            format!("({}) / ({})", self.num.canonical(), self.den.canonical())
        }
    }

    pub fn pretty(&self) -> String {
        if self.den.is_one() {
            self.num.pretty()
        } else {
            format!("({}) / ({})", self.num.pretty(), self.den.pretty())
        }
    }
}

fn normalize(mut num: Polynomial, mut den: Polynomial) -> (Polynomial, Polynomial) {
    if num.is_zero() {
        return (Polynomial::zero(), Polynomial::one());
    }
    let g = num.monomial_content().gcd(&den.monomial_content());
    if !g.is_one() {
        num = num.div_monomial(&g);
        den = den.div_monomial(&g);
    }
    if let Some(c) = den.constant_value() {
        return (num.scale(&c.recip()), Polynomial::one());
    }
    if let Ok(q) = num.exact_div(&den) {
        return (q, Polynomial::one());
    }
    // Common factors living in a single variable.
    if let Some(g) = univariate_common_factor(&den, &num).or_else(|| univariate_common_factor(&num, &den)) {
        num = num.exact_div(&g).expect("common factor divides numerator");
        den = den.exact_div(&g).expect("common factor divides denominator");
    }
    if let Some(c) = den.constant_value() {
        return (num.scale(&c.recip()), Polynomial::one());
    }
    let lc = den.leading_coefficient();
    if !lc.is_one() {
        let inv = lc.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
    }
    (num, den)
}

/// When `single` involves exactly one variable `v`, the gcd of `single`
/// with every `Q[v]` coefficient of `other`, if nonconstant.
fn univariate_common_factor(single: &Polynomial, other: &Polynomial) -> Option<Polynomial> {
    let vars = single.vars();
    if vars.len() != 1 {
        return None;
    }
    let v = *vars.iter().next()?;
    let rest: Vec<Var> = other.vars().into_iter().filter(|&w| w != v).collect();
    let mut g = single.clone();
    for c in other.coefficients_wrt(&rest).values() {
        g = univariate_gcd(&g, c, v).ok()?;
        if g.is_one() {
            return None;
        }
    }
    (g.total_degree().unwrap_or(0) > 0).then_some(g)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den - &other.num * &self.den).is_zero()
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RationalFunction::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_rf {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction { (&self).$m(rhs) }
        }
    )*};
}
forward_rf!(Add add, Sub sub, Mul mul);

/// Variables occurring in numerator or denominator.
pub fn vars_of(f: &RationalFunction) -> BTreeSet<Var> {
    let mut v = f.num.vars();
    v.extend(f.den.vars());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(name: &str) -> Polynomial {
        Polynomial::v(name)
    }

    #[test]
    fn division_of_polynomials() {
        let q = RationalFunction::new(p("a") - p("d"), p("a")).unwrap();
        assert_eq!(q.num(), &(p("a") - p("d")));
        assert_eq!(q.den(), &p("a"));
        assert!(RationalFunction::new(p("a"), Polynomial::zero()).is_err());
        assert!(RationalFunction::one().checked_div(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn cancellation() {
        let x = RationalFunction::new((p("a") - p("d")) * p("l"), (p("a") - p("d")).scale(&rat(2))).unwrap();
        assert_eq!(x.as_polynomial(), Some(&p("l").scale(&crate::arith::rational::frac(1, 2))));
        let y = RationalFunction::new(p("d").pow(2) - Polynomial::one(), (p("d") - Polynomial::one()) * p("a").pow(0)).unwrap();
        assert_eq!(y.as_polynomial(), Some(&(p("d") + Polynomial::one())));
        let z = RationalFunction::new(p("k1") * p("l"), p("k1") * p("k2")).unwrap();
        assert_eq!(z.num(), &p("l"));
        assert_eq!(z.den(), &p("k2"));
    }

    #[test]
    fn arithmetic_and_equality() {
        let inv_a = RationalFunction::new(Polynomial::one(), p("a")).unwrap();
        let s = &(&inv_a * &RationalFunction::from(p("a"))) - &RationalFunction::one();
        assert!(s.is_zero());
        let u = RationalFunction::new(p("l"), p("a") + p("l")).unwrap();
        let w = RationalFunction::new(p("l") * p("d"), (p("a") + p("l")) * p("d")).unwrap();
        assert_eq!(u, w);
    }
}
