//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, is_integer, rat, Rational};
use super::var::Var;
use crate::error::{Error, Result};

/// A power product, stored as `(variable, exponent)` pairs sorted by the
/// global variable order with strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let (v, ea, eb) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            let e = f(ea, eb);
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.degree_in(v) >= e)
    }

    /// `self / other`; caller guarantees `other.divides(self)`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a - b)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.min(b))
    }

    /// Drops the listed variables.
    pub fn without(&self, vars: &[Var]) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| !vars.contains(v)).collect())
    }

    /// Keeps only the listed variables.
    pub fn restrict(&self, vars: &[Var]) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| vars.contains(v)).collect())
    }

    fn fmt_factors(&self) -> String {
        self.0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Graded lexicographic order over the global variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.fmt_factors())
        }
    }
}

/// Canonical sparse polynomial: no zero coefficients are ever stored, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Polynomial {
        Polynomial::constant(rat(n))
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    /// Shorthand for a variable by name.
    pub fn v(name: &str) -> Polynomial {
        Polynomial::var(Var::new(name))
    }

    pub fn term(c: Rational, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including 0).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(v)).max()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.mul(mono), k.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution `v ↦ bindings[v]`; unbound variables are kept.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial>) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Var, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for &(v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(val) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                        factor = &factor * &*pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                factor = factor.mul_monomial(&Monomial(kept));
            }
            out += factor;
        }
        out
    }

    pub fn substitute_one(&self, v: Var, value: &Polynomial) -> Polynomial {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff(&self, v: Var, k: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(v) == k)
                .map(|(m, c)| (m.without(&[v]), c.clone()))
                .collect(),
        }
    }

    /// All nonzero coefficients with respect to `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree_in(v))
                .or_default()
                .add_term(m.without(&[v]), c.clone());
        }
        out
    }

    /// Groups terms by their power product in `vars`; the values are
    /// polynomials in the other variables.
    pub fn coefficients_wrt(&self, vars: &[Var]) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.restrict(vars))
                .or_default()
                .add_term(m.without(vars), c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Evaluates to a rational when every variable is bound.
    pub fn eval(&self, values: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = values.get(&v)?;
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Greatest common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.div(mono), c.clone())).collect(),
        }
    }

    /// Multivariate division by a single divisor in graded-lex order.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let (lm, lc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem_in = self.clone();
        let mut quot = Polynomial::zero();
        let mut rem = Polynomial::zero();
        while let Some((m, c)) = rem_in.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let t = Polynomial::term(&c / &lc, m.div(&lm));
                rem_in -= &t * divisor;
                quot += t;
            } else {
                rem_in.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact quotient, or an error if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!("({self}) / ({divisor})")))
        }
    }

    /// Dense coefficient vector in `v` if the polynomial involves no other
    /// variable.
    pub fn as_univariate(&self, v: Var) -> Option<Vec<Rational>> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.pairs().iter().any(|&(w, _)| w != v) {
                return None;
            }
            out[m.degree_in(v) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(v: Var, coeffs: &[Rational]) -> Polynomial {
        Polynomial::from_terms(coeffs.iter().enumerate().map(|(k, c)| {
            (Monomial::from_pairs([(v, k as u32)]), c.clone())
        }))
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// Canonical text form used in all JSON output, e.g.
    /// `(-1/2)*d^2*l + 3*a`; terms run from the largest monomial down.
    pub fn canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let coef = if is_integer(c) && !c.is_negative() {
                    fmt_rational(c)
                } else {
                    format!("({})", fmt_rational(c))
                };
                if m.is_one() {
                    coef
                } else if c.is_one() {
                    m.fmt_factors()
                } else {
                    format!("{coef}*{}", m.fmt_factors())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Human-oriented form with the smallest terms first, e.g. `1/2 - d`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&m.fmt_factors());
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&mag), m.fmt_factors()));
            }
        }
        out
    }
}

/// Monic gcd in `Q[v]`; `gcd(0, 0) = 0`.
pub fn univariate_gcd(p: &Polynomial, q: &Polynomial, v: Var) -> Result<Polynomial> {
    let not_uni = |x: &Polynomial| Error::NotUnivariate {
        var: v.to_string(),
        poly: x.canonical(),
    };
    p.as_univariate(v).ok_or_else(|| not_uni(p))?;
    q.as_univariate(v).ok_or_else(|| not_uni(q))?;
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial { (&self).$m(rhs) }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { self.$m(&rhs) }
        }
    )*};
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

forward_binops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::frac;

    fn d() -> Polynomial {
        Polynomial::v("d")
    }
    fn l() -> Polynomial {
        Polynomial::v("l")
    }
    fn m() -> Polynomial {
        Polynomial::v("m")
    }
    fn a() -> Polynomial {
        Polynomial::v("a")
    }

    #[test]
    fn additive_inverse_and_squares() {
        let p = d() + l().scale(&rat(2));
        let q = -d() - l().scale(&rat(2));
        assert!((p + q).is_zero());
        assert_eq!((l() + d()) * (l() - d()), l().pow(2) - d().pow(2));
    }

    #[test]
    fn skew_substitution() {
        let p = d() + l().scale(&rat(2));
        let s = p.substitute_one(Var::l(), &(-l() - d()));
        assert_eq!(s, -d() - l().scale(&rat(2)));
        let mut b = BTreeMap::new();
        b.insert(Var::l(), Polynomial::zero());
        b.insert(Var::d(), Polynomial::one());
        assert_eq!(p.substitute(&b), Polynomial::one());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let mut b = BTreeMap::new();
        b.insert(Var::l(), d());
        b.insert(Var::d(), l());
        assert_eq!((l() - d()).substitute(&b), d() - l());
    }

    #[test]
    fn block_coefficient_shift() {
        // g_{0,1} = a + 3l + d with l -> l + m
        let g = a() + l().scale(&rat(3)) + d();
        let s = g.substitute_one(Var::l(), &(l() + m()));
        assert_eq!(s, a() + l().scale(&rat(3)) + m().scale(&rat(3)) + d());
    }

    #[test]
    fn coefficient_extraction() {
        let p = d() + l().scale(&rat(2));
        assert_eq!(p.coeff(Var::l(), 1), Polynomial::int(2));
        assert_eq!(p.coeff(Var::l(), 0), d());
        assert_eq!((l() + m()).pow(2).coeff(Var::m(), 2), Polynomial::one());
    }

    #[test]
    fn gcd_examples() {
        let x = Var::d();
        assert_eq!(univariate_gcd(&(d().pow(2) - Polynomial::one()), &(d() - Polynomial::one()), x).unwrap(), d() - Polynomial::one());
        assert_eq!(univariate_gcd(&d(), &Polynomial::one(), x).unwrap(), Polynomial::one());
        assert_eq!(univariate_gcd(&Polynomial::zero(), &d().pow(2), x).unwrap(), d().pow(2));
        assert!(univariate_gcd(&Polynomial::zero(), &Polynomial::zero(), x).unwrap().is_zero());
        assert!(matches!(univariate_gcd(&(d() + l()), &d(), x), Err(Error::NotUnivariate { .. })));
    }

    #[test]
    fn canonical_form() {
        let p = d().pow(2).mul(&l()).scale(&frac(-1, 2)) + a().scale(&rat(3));
        assert_eq!(p.canonical(), "(-1/2)*d^2*l + 3*a");
        assert_eq!((Polynomial::constant(frac(1, 2)) - d()).pretty(), "1/2 - d");
        assert_eq!(Polynomial::zero().canonical(), "0");
    }

    #[test]
    fn exact_division() {
        let p = (d() + l()) * (a() - d());
        assert_eq!(p.exact_div(&(a() - d())).unwrap(), d() + l());
        assert!(p.exact_div(&(a() + d())).is_err());
        assert!(p.exact_div(&Polynomial::zero()).is_err());
    }
}
