//! The annihilation Lie algebra: basis `a_(n)`, `n ≥ 0`, with
//! `[a_(m), b_(n)] = Σ_j C(m,j) (a_(j)b)_(m+n-j)` and `(∂a)_(n) = -n a_(n-1)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rational::{binomial, falling_factorial};
use crate::arith::{rat, Polynomial, Rational, Var};
use crate::conformal::{all_products, ConformalAlgebra, Element, GeneratorId};
use crate::error::Result;

/// `generator_(mode)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mode {
    pub gen: GeneratorId,
    pub mode: u32,
}

impl Mode {
    pub fn new(gen: GeneratorId, mode: u32) -> Mode {
        Mode { gen, mode }
    }

    /// `G_{i,m}`, identified with `(G_i)_(m+1)`.
    pub fn block(i: i64, m: i64) -> Option<Mode> {
        (m >= -1).then(|| Mode::new(GeneratorId::g(i), (m + 1) as u32))
    }

    /// The second index of `G_{i,m}`.
    pub fn display_index(&self) -> i64 {
        self.mode as i64 - 1
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_({})", self.gen, self.mode)
    }
}

/// Finite sum of modes with coefficients polynomial in α. No zero entries.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AnnSum {
    terms: BTreeMap<Mode, Polynomial>,
}

impl AnnSum {
    pub fn zero() -> AnnSum {
        AnnSum::default()
    }

    pub fn basis(m: Mode) -> AnnSum {
        AnnSum::term(m, Polynomial::one())
    }

    pub fn term(m: Mode, c: Polynomial) -> AnnSum {
        let mut s = AnnSum::zero();
        s.add_term(m, c);
        s
    }

    pub fn add_term(&mut self, m: Mode, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Polynomial::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &AnnSum) -> AnnSum {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Polynomial) -> AnnSum {
        let mut out = AnnSum::zero();
        for (m, p) in &self.terms {
            out.add_term(*m, p * c);
        }
        out
    }

    pub fn neg(&self) -> AnnSum {
        self.scale(&Polynomial::int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &Polynomial)> {
        self.terms.iter()
    }

    pub fn get(&self, m: &Mode) -> Polynomial {
        self.terms.get(m).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn to_json(&self) -> Vec<ModeTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| ModeTermJson { gen: m.gen.to_string(), mode: m.mode, coeff: c.canonical() })
            .collect()
    }
}

impl fmt::Debug for AnnSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}){m}", c.pretty())).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeTermJson {
    pub gen: String,
    pub mode: u32,
    pub coeff: String,
}

/// `(Σ_g p_g(∂) g)_(n)` expanded with `(∂^r g)_(n) = (-1)^r n(n-1)…(n-r+1) g_(n-r)`.
/// Coefficients may involve α but not λ.
pub fn mode_of(x: &Element, n: u32) -> AnnSum {
    let mut out = AnnSum::zero();
    for (g, p) in x.terms() {
        for (r, c) in p.coeffs_in(Var::d()) {
            if r > n {
                continue;
            }
            let sign = if r % 2 == 0 { rat(1) } else { rat(-1) };
            let f = sign * Rational::from_integer(falling_factorial(n, r));
            out.add_term(Mode::new(*g, n - r), c.scale(&f));
        }
    }
    out
}

pub fn ann_bracket(alg: &ConformalAlgebra, x: Mode, y: Mode) -> Result<AnnSum> {
    let (a, b) = (Element::gen(x.gen), Element::gen(y.gen));
    let mut out = AnnSum::zero();
    for (j, prod) in all_products(alg, &a, &b)? {
        if j > x.mode {
            continue;
        }
        let c = Polynomial::constant(Rational::from_integer(binomial(x.mode, j)));
        out = out.add(&mode_of(&prod, x.mode + y.mode - j).scale(&c));
    }
    Ok(out)
}

/// Bilinear extension of [`ann_bracket`].
pub fn ann_bracket_sums(alg: &ConformalAlgebra, x: &AnnSum, y: &AnnSum) -> Result<AnnSum> {
    let mut out = AnnSum::zero();
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            out = out.add(&ann_bracket(alg, *mx, *my)?.scale(&(cx * cy)));
        }
    }
    Ok(out)
}

/// The closed form `[G_{i,m}, G_{j,n}] = (j-i)α G_{i+j,m+n+1} + ((j+1)(m+1)-(n+1)(i+1)) G_{i+j,m+n}`.
pub fn block_closed_form(alpha: &Polynomial, i: i64, m: i64, j: i64, n: i64) -> AnnSum {
    let mut out = AnnSum::zero();
    if i + j < -1 {
        return out;
    }
    if let Some(t) = Mode::block(i + j, m + n + 1) {
        out.add_term(t, alpha.scale(&rat(j - i)));
    }
    if let Some(t) = Mode::block(i + j, m + n) {
        out.add_term(t, Polynomial::int((j + 1) * (m + 1) - (n + 1) * (i + 1)));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub indices: (i64, i64, i64, i64),
    pub expected: Vec<ModeTermJson>,
    pub computed: Vec<ModeTermJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub bound: i64,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares [`ann_bracket`] on B(2, α) with [`block_closed_form`] for all
/// `i, m, j, n ∈ [-1, bound]`.
pub fn check_block_closed_form(alg: &ConformalAlgebra, alpha: &Polynomial, bound: i64) -> Result<ClosedFormReport> {
    let range: Vec<i64> = (-1..=bound).collect();
    let mut quads = Vec::new();
    for &i in &range {
        for &m in &range {
            for &j in &range {
                for &n in &range {
                    quads.push((i, m, j, n));
                }
            }
        }
    }
    let results: Vec<Option<Mismatch>> = quads
        .par_iter()
        .map(|&(i, m, j, n)| {
            let computed = ann_bracket(alg, Mode::block(i, m).unwrap(), Mode::block(j, n).unwrap())?;
            let expected = block_closed_form(alpha, i, m, j, n);
            Ok((computed != expected).then(|| Mismatch {
                indices: (i, m, j, n),
                expected: expected.to_json(),
                computed: computed.to_json(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(ClosedFormReport {
        bound,
        compared: quads.len(),
        mismatches: results.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LieReport {
    pub elements: usize,
    pub antisymmetry_failures: Vec<(String, String)>,
    pub jacobi_failures: Vec<(String, String, String)>,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_failures.is_empty() && self.jacobi_failures.is_empty()
    }
}

/// Antisymmetry on all pairs and Jacobi on all triples of the given modes.
pub fn check_lie_axioms(alg: &ConformalAlgebra, sample: &[Mode]) -> Result<LieReport> {
    let mut anti = Vec::new();
    for &x in sample {
        for &y in sample {
            if ann_bracket(alg, x, y)? != ann_bracket(alg, y, x)?.neg() {
                anti.push((x.to_string(), y.to_string()));
            }
        }
    }
    let triples: Vec<(Mode, Mode, Mode)> = sample
        .iter()
        .flat_map(|&x| sample.iter().flat_map(move |&y| sample.iter().map(move |&z| (x, y, z))))
        .collect();
    let jac: Vec<Option<(String, String, String)>> = triples
        .par_iter()
        .map(|&(x, y, z)| {
            let (bx, by, bz) = (AnnSum::basis(x), AnnSum::basis(y), AnnSum::basis(z));
            let t1 = ann_bracket_sums(alg, &bx, &ann_bracket(alg, y, z)?)?;
            let t2 = ann_bracket_sums(alg, &by, &ann_bracket(alg, z, x)?)?;
            let t3 = ann_bracket_sums(alg, &bz, &ann_bracket(alg, x, y)?)?;
            let sum = t1.add(&t2).add(&t3);
            Ok((!sum.is_zero()).then(|| (x.to_string(), y.to_string(), z.to_string())))
        })
        .collect::<Result<_>>()?;
    Ok(LieReport {
        elements: sample.len(),
        antisymmetry_failures: anti,
        jacobi_failures: jac.into_iter().flatten().collect(),
    })
}

/// All `(g)_(n)` with generator index and mode bounded.
pub fn modes_up_to(alg: &ConformalAlgebra, max_index: i64, max_mode: u32) -> Vec<Mode> {
    alg.generators_up_to(max_index)
        .into_iter()
        .flat_map(|g| (0..=max_mode).map(move |n| Mode::new(g, n)))
        .collect()
}
