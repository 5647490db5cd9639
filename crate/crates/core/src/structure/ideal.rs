//! Graded ideal closure over Q[∂] and truncated simplicity certificates.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{univariate_gcd, Polynomial, Rational, Var};
use crate::conformal::{all_products, ConformalAlgebra, Element, GeneratorId};
use crate::error::{Error, Result};

/// Where an ideal element came from: a seed or a product with a generator.
#[derive(Clone, Debug, Serialize)]
pub enum Origin {
    Seed(usize),
    /// `(G_j)_(n) x` with `x` the element recorded at the given step.
    Left { generator: String, n: u32, parent: usize },
    /// `x_(n) G_j`.
    Right { generator: String, n: u32, parent: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub step: usize,
    pub grade: i64,
    pub generator: String,
    pub origin: Origin,
}

/// Per grade, the monic generator of `{p : p(∂)G_i ∈ J}` found so far.
#[derive(Clone, Debug)]
pub struct GradedIdealState {
    pub bound: i64,
    pub grades: BTreeMap<i64, Option<Polynomial>>,
    pub steps: usize,
    pub audit: Vec<AuditEntry>,
}

impl GradedIdealState {
    pub fn is_full(&self, grade: i64) -> bool {
        matches!(self.grades.get(&grade), Some(Some(p)) if p.is_one())
    }

    pub fn full_grades(&self) -> Vec<i64> {
        self.grades.keys().copied().filter(|&g| self.is_full(g)).collect()
    }

    pub fn all_full(&self) -> bool {
        self.grades.keys().all(|&g| self.is_full(g))
    }

    pub fn all_zero(&self) -> bool {
        self.grades.values().all(Option::is_none)
    }

    /// Generator per grade in canonical form, `"0"` for the zero ideal.
    pub fn summary(&self) -> BTreeMap<i64, String> {
        self.grades
            .iter()
            .map(|(g, p)| (*g, p.as_ref().map_or("0".to_string(), Polynomial::canonical)))
            .collect()
    }
}

struct Pending {
    element: Element,
    origin: Origin,
}

fn homogeneous(e: &Element) -> Option<(i64, &Polynomial)> {
    let mut it = e.terms();
    let (g, p) = it.next()?;
    it.next().is_none().then_some((g.index, p))
}

fn reduce(e: &Element, grades: &BTreeMap<i64, Option<Polynomial>>) -> Result<Element> {
    let mut out = Element::zero();
    for (g, p) in e.terms() {
        match grades.get(&g.index) {
            Some(Some(q)) => out.add_term(*g, p.div_rem(q)?.1),
            _ => out.add_term(*g, p.clone()),
        }
    }
    Ok(out)
}

/// Smallest ideal containing `seeds`, tracked in grades `[-1, bound]`.
///
/// Only products with basis generators of grade at most `bound` are
/// formed, so every recorded generator lies in the true ideal. The α
/// parameter of the algebra must be a rational value.
pub fn ideal_closure(alg: &ConformalAlgebra, seeds: &[Element], bound: i64) -> Result<GradedIdealState> {
    if alg.alpha().is_some_and(|a| a.is_symbolic()) {
        return Err(Error::SymbolicParameter);
    }
    let d = Var::d();
    let lo = alg.index_min();
    let gens = alg.generators_up_to(bound);
    let mut grades: BTreeMap<i64, Option<Polynomial>> = (lo..=bound).map(|g| (g, None)).collect();
    let mut queue: VecDeque<Pending> = seeds
        .iter()
        .enumerate()
        .map(|(k, s)| Pending { element: s.clone(), origin: Origin::Seed(k) })
        .collect();
    let mut audit = Vec::new();
    let mut steps = 0;
    while let Some(Pending { element, origin }) = queue.pop_front() {
        steps += 1;
        let step = steps;
        if element.terms().any(|(g, _)| g.index > bound) {
            continue;
        }
        let reduced = reduce(&element, &grades)?;
        if reduced.is_zero() {
            continue;
        }
        if let Some((grade, p)) = homogeneous(&reduced) {
            let current = grades.get(&grade).cloned().flatten();
            let next = match &current {
                Some(q) => univariate_gcd(q, p, d)?,
                None => p.monic(),
            };
            if current.as_ref() == Some(&next) {
                continue;
            }
            let g = GeneratorId::new(alg.family(), grade);
            audit.push(AuditEntry { step, grade, generator: next.canonical(), origin: origin.clone() });
            grades.insert(grade, Some(next.clone()));
            let x = Element::term(g, next);
            for &h in &gens {
                let eh = Element::gen(h);
                for (n, e) in all_products(alg, &eh, &x)? {
                    queue.push_back(Pending {
                        element: e,
                        origin: Origin::Left { generator: h.to_string(), n, parent: step },
                    });
                }
                for (n, e) in all_products(alg, &x, &eh)? {
                    queue.push_back(Pending {
                        element: e,
                        origin: Origin::Right { generator: h.to_string(), n, parent: step },
                    });
                }
            }
        } else {
            let bottom = Element::gen(alg.gen(lo));
            for (n, e) in all_products(alg, &bottom, &reduced)? {
                queue.push_back(Pending {
                    element: e,
                    origin: Origin::Left { generator: alg.gen(lo).to_string(), n, parent: step },
                });
            }
        }
    }
    Ok(GradedIdealState { bound, grades, steps, audit })
}

/// `Σ_i p_i(∂) G_i` with random small integer coefficients, grades in
/// `[index_min, bound]`.
pub fn random_element(alg: &ConformalAlgebra, bound: i64, rng: &mut ChaCha8Rng) -> Element {
    let d = Var::d();
    let gens = alg.generators_up_to(bound);
    let mut e = Element::zero();
    for &g in &gens {
        if rng.gen_bool(0.5) {
            let deg = rng.gen_range(0..=2u32);
            let coeffs: Vec<Rational> = (0..=deg).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
            e.add_term(g, Polynomial::from_univariate(d, &coeffs));
        }
    }
    if e.is_zero() {
        e = Element::gen(*gens.last().expect("algebra has a generator"));
    }
    e
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedRun {
    pub seed: String,
    pub full: bool,
    pub grades_full: Vec<i64>,
    pub ideal: BTreeMap<i64, String>,
    pub steps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityCertificate {
    pub algebra: String,
    pub alpha: Option<String>,
    #[serde(rename = "D")]
    pub bound: i64,
    pub seeds: Vec<SeedRun>,
    pub certified: bool,
}

/// Closure from every `G_j`, `j ≤ bound`, and from `random` random elements
/// drawn from `rng_seed`. Certified iff every closure is full in every grade.
pub fn is_simple_truncated(alg: &ConformalAlgebra, bound: i64, random: usize, rng_seed: u64) -> Result<SimplicityCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seeds: Vec<Element> = alg.generators_up_to(bound).into_iter().map(Element::gen).collect();
    seeds.extend((0..random).map(|_| random_element(alg, bound, &mut rng)));
    let runs: Vec<SeedRun> = seeds
        .par_iter()
        .map(|s| {
            let st = ideal_closure(alg, std::slice::from_ref(s), bound)?;
            Ok(SeedRun {
                seed: s.canonical(),
                full: st.all_full(),
                grades_full: st.full_grades(),
                ideal: st.summary(),
                steps: st.steps,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SimplicityCertificate {
        algebra: alg.name().to_string(),
        alpha: alg.alpha().map(ToString::to_string),
        bound,
        certified: runs.iter().all(|r| r.full),
        seeds: runs,
    })
}

/// Graded algebra on `G_i`, `i ≥ -1`, with every bracket zero.
pub fn abelian_control() -> ConformalAlgebra {
    ConformalAlgebra::new("abelian", 'G', -1, None, true, None, Arc::new(|_, _| Element::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::catalog::make_b;
    use crate::conformal::Param;

    fn b(s: u8, a: i64) -> ConformalAlgebra {
        make_b(s, Param::Value(rat(a))).unwrap()
    }

    #[test]
    fn empty_seed_stays_zero() {
        let st = ideal_closure(&b(2, 1), &[], 3).unwrap();
        assert!(st.all_zero());
    }

    #[test]
    fn block_two_from_torsion_free_seed() {
        let d = Polynomial::var(Var::d());
        let seed = Element::term(GeneratorId::g(0), d.pow(2) + Polynomial::one());
        let st = ideal_closure(&b(2, 1), &[seed], 3).unwrap();
        assert!(st.all_full(), "{:?}", st.summary());
        assert!(!st.audit.is_empty());
    }

    #[test]
    fn symbolic_alpha_rejected() {
        let alg = make_b(2, Param::symbolic_alpha()).unwrap();
        assert!(matches!(ideal_closure(&alg, &[], 2), Err(Error::SymbolicParameter)));
    }

    #[test]
    fn block_one_keeps_the_torsion_ideal() {
        // Every product landing in grade -1 carries the factor (∂ - α).
        let st = ideal_closure(&b(1, 0), &[Element::gen(GeneratorId::g(2))], 4).unwrap();
        assert_eq!(st.grades[&-1], Some(Polynomial::var(Var::d())));
        assert!((0..=4).all(|g| st.is_full(g)));
    }

    #[test]
    fn abelian_is_not_simple() {
        let cert = is_simple_truncated(&abelian_control(), 2, 2, 7).unwrap();
        assert!(!cert.certified);
        let g0 = cert.seeds.iter().find(|r| r.seed == "(1) G_{0}").unwrap();
        assert_eq!(g0.grades_full, vec![0]);
    }

    #[test]
    fn block_two_certified() {
        let cert = is_simple_truncated(&b(2, -2), 3, 3, 1).unwrap();
        assert!(cert.certified, "{cert:?}");
    }

    #[test]
    fn random_elements_stay_in_range() {
        let vir = crate::catalog::make_virasoro();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let e = random_element(&vir, 4, &mut rng);
            assert!(!e.is_zero());
            assert!(e.generators().all(|g| g.index == 0));
        }
    }
}
