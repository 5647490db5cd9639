use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith::{Polynomial, Rational, Var};

/// A basis generator: family tag plus integer index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GeneratorId {
    pub family: char,
    pub index: i64,
}

impl GeneratorId {
    pub const fn new(family: char, index: i64) -> GeneratorId {
        GeneratorId { family, index }
    }

    pub const fn g(index: i64) -> GeneratorId {
        GeneratorId::new('G', index)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            'L' | 'v' if self.index == 0 => write!(f, "{}", self.family),
            'J' => write!(f, "J^{}", self.index),
            c => write!(f, "{c}_{{{}}}", self.index),
        }
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finite combination `Σ p_g · g` with polynomial coefficients.
///
/// Coefficients are polynomials in ∂ for plain elements and in λ, ∂ (and
/// any further bracket parameters) for λ-bracket values; both share this
/// representation. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<GeneratorId, Polynomial>,
}

/// Value of a λ-bracket: an [`Element`] whose coefficients involve λ.
pub type LambdaElement = Element;

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn gen(g: GeneratorId) -> Element {
        Element::term(g, Polynomial::one())
    }

    pub fn term(g: GeneratorId, p: Polynomial) -> Element {
        let mut e = Element::zero();
        e.add_term(g, p);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GeneratorId, Polynomial)>) -> Element {
        let mut e = Element::zero();
        for (g, p) in terms {
            e.add_term(g, p);
        }
        e
    }

    pub fn add_term(&mut self, g: GeneratorId, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_default();
        *slot += p;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorId, &Polynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, g: &GeneratorId) -> Polynomial {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (g, p) in &other.terms {
            out.add_term(*g, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Polynomial) -> Element {
        self.map(|p| p * q)
    }

    /// ∂ · x
    pub fn apply_d(&self) -> Element {
        self.mul_poly(&Polynomial::var(Var::d()))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Element {
        Element::from_terms(self.terms.iter().map(|(g, p)| (*g, f(p))))
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial>) -> Element {
        self.map(|p| p.substitute(bindings))
    }

    pub fn substitute_one(&self, v: Var, value: &Polynomial) -> Element {
        self.map(|p| p.substitute_one(v, value))
    }

    /// Coefficientwise `v^k` coefficient.
    pub fn coeff(&self, v: Var, k: u32) -> Element {
        self.map(|p| p.coeff(v, k))
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.values().filter_map(|p| p.degree_in(v)).max()
    }

    pub fn canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(g, p)| format!("({}) {g}", p.canonical()))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(g, p)| {
                if p.is_one() {
                    g.to_string()
                } else if p.num_terms() == 1 && p.constant_value().is_some() {
                    format!("{} {g}", p.pretty())
                } else {
                    format!("({}) {g}", p.pretty())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(g, p)| TermJson { gen: g.to_string(), coeff: p.canonical() })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TermJson {
    pub gen: String,
    pub coeff: String,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}
