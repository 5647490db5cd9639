//! Certificates that high-grade generators act trivially on finite
//! modules, by exact linear algebra on the relations obtained from the
//! `b_0` action.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{fmt_rational, nullspace, parse_rational, rat, Monomial, Polynomial, Rational, Var};
use crate::error::{Error, Result};

/// A composition factor: free of rank one `M_{Δ,β}` (`Δ ≠ 0`) or
/// one-dimensional `C_β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Free { delta: Rational, beta: Rational },
    Trivial { beta: Rational },
}

impl Factor {
    pub fn free(delta: Rational, beta: Rational) -> Result<Factor> {
        if delta == rat(0) {
            return Err(Error::InvalidParameter("free composition factor needs Δ ≠ 0".into()));
        }
        Ok(Factor::Free { delta, beta })
    }

    pub fn beta(&self) -> &Rational {
        match self {
            Factor::Free { beta, .. } | Factor::Trivial { beta } => beta,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Free { delta, beta } => write!(f, "M:{}/{}", fmt_rational(delta), fmt_rational(beta)),
            Factor::Trivial { beta } => write!(f, "C:{}", fmt_rational(beta)),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Bottom factor first. `M:Δ/β` is free, `C:β` trivial; `;` separates.
pub fn parse_series(spec: &str) -> Result<Vec<Factor>> {
    let bad = || Error::BadSeries(spec.to_string());
    let series = spec
        .split(';')
        .map(|item| {
            let (kind, data) = item.trim().split_once(':').ok_or_else(bad)?;
            match kind {
                "M" => {
                    let (d, b) = data.split_once('/').ok_or_else(bad)?;
                    Factor::free(parse_rational(d)?, parse_rational(b)?)
                }
                "C" => Ok(Factor::Trivial { beta: parse_rational(data)? }),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if series.is_empty() {
        return Err(bad());
    }
    Ok(series)
}

pub fn format_series(series: &[Factor]) -> String {
    series.iter().map(Factor::to_string).collect::<Vec<_>>().join(";")
}

/// `b_i λ v_bottom ≡ p(λ, ∂) v_top` modulo lower terms, with `b_0` acting on
/// `b_i` by `(iα + (i+2)λ + ∂)`.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionProblem {
    pub i: i64,
    #[serde(serialize_with = "ser_rational")]
    pub alpha: Rational,
    pub bottom: Factor,
    pub top: Factor,
    /// Degree bound for the ansatz of `p`.
    pub degree: u32,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

impl ObstructionProblem {
    /// 1: free/free, 2: trivial/free, 3: free/trivial, 4: trivial/trivial.
    pub fn case(&self) -> u8 {
        match (&self.bottom, &self.top) {
            (Factor::Free { .. }, Factor::Free { .. }) => 1,
            (Factor::Trivial { .. }, Factor::Free { .. }) => 2,
            (Factor::Free { .. }, Factor::Trivial { .. }) => 3,
            (Factor::Trivial { .. }, Factor::Trivial { .. }) => 4,
        }
    }

    /// Monomials of the ansatz: `λ^a ∂^b` (cases 1, 2) or `λ^a` (3, 4).
    fn exponents(&self) -> Vec<(u32, u32)> {
        let two_vars = self.case() <= 2;
        (0..=self.degree)
            .flat_map(|a| {
                let top = if two_vars { self.degree - a } else { 0 };
                (0..=top).map(move |b| (a, b))
            })
            .collect()
    }

    pub fn unknowns(&self) -> Vec<Var> {
        self.exponents().iter().map(|(a, b)| Var::new(&format!("p{a}_{b}"))).collect()
    }

    /// `p(x, y)` over the ansatz coefficients.
    pub fn ansatz(&self, x: &Polynomial, y: &Polynomial) -> Polynomial {
        self.exponents()
            .iter()
            .zip(self.unknowns())
            .fold(Polynomial::zero(), |acc, (&(a, b), u)| acc + Polynomial::var(u) * x.pow(a) * y.pow(b))
    }

    /// The relation, as a polynomial in `λ, μ, ∂` linear in the ansatz
    /// coefficients, which must vanish identically.
    pub fn equation(&self, p: &dyn Fn(&Polynomial, &Polynomial) -> Polynomial) -> Polynomial {
        let (l, m, d) = (Polynomial::var(Var::l()), Polynomial::var(Var::m()), Polynomial::var(Var::d()));
        let c = |r: &Rational| Polynomial::constant(r.clone());
        let shift = c(&(rat(self.i) * &self.alpha)) + m.scale(&rat(1 + self.i)) - &l;
        let zero = Polynomial::zero();
        match (&self.bottom, &self.top) {
            (Factor::Free { delta: d1, beta: b1 }, Factor::Free { delta: dk, beta: bk }) => {
                (c(bk) + &d + c(dk) * &m) * p(&l, &(&m + &d))
                    - &shift * p(&(&l + &m), &d)
                    - (c(b1) + &l + &d + c(d1) * &m) * p(&l, &d)
            }
            (Factor::Trivial { .. }, Factor::Free { delta: dk, beta: bk }) => {
                p(&l, &(&m + &d)) * (c(bk) + &d + c(dk) * &m) - &shift * p(&(&l + &m), &d)
            }
            (Factor::Free { delta: d1, beta: b1 }, Factor::Trivial { .. }) => {
                &shift * p(&(&l + &m), &zero) + (c(b1) + &l + &d + c(d1) * &m) * p(&l, &zero)
            }
            (Factor::Trivial { .. }, Factor::Trivial { .. }) => &shift * p(&(&l + &m), &zero),
        }
    }

    pub fn symbolic_equation(&self) -> Polynomial {
        self.equation(&|x, y| self.ansatz(x, y))
    }
}

/// One row per monomial in `λ, μ, ∂`; columns follow `unknowns()`.
#[derive(Clone, Debug)]
pub struct CaseSystem {
    pub unknowns: Vec<Var>,
    pub rows: Vec<(Monomial, Vec<Rational>)>,
}

impl CaseSystem {
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Rows whose monomial is among `keep`.
    pub fn restrict(&self, keep: &[Monomial]) -> CaseSystem {
        CaseSystem {
            unknowns: self.unknowns.clone(),
            rows: self.rows.iter().filter(|(m, _)| keep.contains(m)).cloned().collect(),
        }
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        nullspace(&self.matrix(), self.unknowns.len())
    }
}

pub fn build_case_system(prob: &ObstructionProblem) -> CaseSystem {
    let unknowns = prob.unknowns();
    let eq = prob.symbolic_equation();
    let rows = eq
        .coefficients_wrt(&[Var::l(), Var::m(), Var::d()])
        .into_iter()
        .map(|(mono, lin)| {
            let row = unknowns.iter().map(|&u| lin.coeff(u, 1).constant_value().unwrap_or_else(|| rat(0))).collect();
            (mono, row)
        })
        .collect();
    CaseSystem { unknowns, rows }
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionCertificate {
    pub problem: ObstructionProblem,
    pub case: u8,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub trivial: bool,
    /// Nonzero solutions `p(λ, ∂)` when the action need not vanish.
    pub counterexamples: Vec<String>,
}

/// `p` for a coefficient vector of the ansatz.
pub fn polynomial_of(prob: &ObstructionProblem, v: &[Rational]) -> Polynomial {
    let (l, d) = (Polynomial::var(Var::l()), Polynomial::var(Var::d()));
    let values: BTreeMap<Var, Polynomial> =
        prob.unknowns().into_iter().zip(v).map(|(u, c)| (u, Polynomial::constant(c.clone()))).collect();
    prob.ansatz(&l, &d).substitute(&values)
}

pub fn certify_trivial_action(prob: &ObstructionProblem) -> ActionCertificate {
    let sys = build_case_system(prob);
    let ns = sys.nullspace();
    ActionCertificate {
        problem: prob.clone(),
        case: prob.case(),
        unknowns: sys.unknowns.len(),
        equations: sys.rows.len(),
        rank: sys.unknowns.len() - ns.len(),
        trivial: ns.is_empty(),
        counterexamples: ns.iter().map(|v| polynomial_of(prob, v).pretty()).collect(),
    }
}

/// Least `i0 ∈ [1, max_i0]` with a trivial nullspace for every
/// `i ∈ [i0, i0 + window]`.
pub fn find_i0(template: &ObstructionProblem, window: i64, max_i0: i64) -> Option<i64> {
    let trivial: Vec<bool> = (1..=max_i0 + window)
        .into_par_iter()
        .map(|i| certify_trivial_action(&ObstructionProblem { i, ..template.clone() }).trivial)
        .collect();
    (1..=max_i0).find(|&i0| trivial[(i0 - 1) as usize..=(i0 - 1 + window) as usize].iter().all(|&t| t))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRow {
    pub i: i64,
    pub lhs: String,
    pub rhs: String,
    pub differ: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeBoundReport {
    pub delta_1: String,
    pub delta_k: String,
    pub m: u32,
    pub rows: Vec<DegreeRow>,
    /// Least `i` in range from which both sides differ throughout.
    pub bound: Option<i64>,
}

/// Compares `(i+1)(Δ_k+1)(i+1-Δ_k)^m` with `(i+1-Δ₁Δ_k)(i+1)^m`.
pub fn degree_bound_check(delta_1: &Rational, delta_k: &Rational, m: u32, range: std::ops::RangeInclusive<i64>) -> Result<DegreeBoundReport> {
    if *delta_1 == rat(0) || *delta_k == rat(0) || m < 2 {
        return Err(Error::InvalidParameter("degree bound check needs Δ₁, Δ_k ≠ 0 and m ≥ 2".into()));
    }
    let pow = |x: Rational, e: u32| (0..e).fold(rat(1), |acc, _| acc * x.clone());
    let rows: Vec<DegreeRow> = range
        .map(|i| {
            let n = rat(i + 1);
            let lhs = n.clone() * (delta_k.clone() + rat(1)) * pow(n.clone() - delta_k.clone(), m);
            let rhs = (n.clone() - delta_1.clone() * delta_k.clone()) * pow(n, m);
            DegreeRow { i, differ: lhs != rhs, lhs: fmt_rational(&lhs), rhs: fmt_rational(&rhs) }
        })
        .collect();
    let bound = match rows.iter().rposition(|r| !r.differ) {
        None => rows.first().map(|r| r.i),
        Some(k) => rows.get(k + 1).map(|r| r.i),
    };
    Ok(DegreeBoundReport { delta_1: fmt_rational(delta_1), delta_k: fmt_rational(delta_k), m, rows, bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct Refusal {
    pub i: i64,
    pub case: u8,
    pub bottom: usize,
    pub top: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleCertificate {
    pub series: String,
    pub alpha: String,
    pub i0: i64,
    pub window: i64,
    pub degree: u32,
    /// Every `(bottom, top)` factor pair, 1-based: factor `j` plays the
    /// bottom once `b_i` is known to kill `v_1, …, v_{j-1}`.
    pub pairs: Vec<(usize, usize)>,
    pub checks: usize,
    pub certified: bool,
    pub refusal: Option<Refusal>,
}

/// Checks `b_i λ v_j = 0` for `i ∈ [i0, i0 + window]` over all factor pairs.
pub fn no_finite_module_certificate(series: &[Factor], alpha: &Rational, i0: i64, window: i64, degree: u32) -> Result<ModuleCertificate> {
    if i0 < 1 || window < 0 || series.is_empty() {
        return Err(Error::InvalidParameter("need i0 ≥ 1, window ≥ 0 and a nonempty series".into()));
    }
    let n = series.len();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|j| (1..=n).map(move |k| (j, k))).collect();
    let jobs: Vec<(i64, usize, usize)> =
        (i0..=i0 + window).flat_map(|i| pairs.iter().map(move |&(j, k)| (i, j, k))).collect();
    let results: Vec<(i64, usize, usize, ActionCertificate)> = jobs
        .par_iter()
        .map(|&(i, j, k)| {
            let prob = ObstructionProblem {
                i,
                alpha: alpha.clone(),
                bottom: series[j - 1].clone(),
                top: series[k - 1].clone(),
                degree,
            };
            (i, j, k, certify_trivial_action(&prob))
        })
        .collect();
    let refusal = results.iter().find(|r| !r.3.trivial).map(|(i, j, k, c)| Refusal {
        i: *i,
        case: c.case,
        bottom: *j,
        top: *k,
        counterexamples: c.counterexamples.clone(),
    });
    Ok(ModuleCertificate {
        series: format_series(series),
        alpha: fmt_rational(alpha),
        i0,
        window,
        degree,
        pairs,
        checks: results.len(),
        certified: refusal.is_none(),
        refusal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub case: u8,
    pub alpha: String,
    pub bottom: Factor,
    pub top: Factor,
    pub i0: Option<i64>,
}

pub fn grid_deltas() -> Vec<Rational> {
    vec![rat(1), rat(-1), rat(2), rat(-2), rat(3), rat(1) / rat(2)]
}

pub fn grid_betas() -> Vec<Rational> {
    vec![rat(0), rat(1), rat(-2)]
}

pub fn grid_alphas() -> Vec<Rational> {
    vec![rat(0), rat(1) / rat(2)]
}

/// Every factor kind pair over the parameter grid, with its `i0`.
pub fn grid_scan(degree: u32, window: i64, max_i0: i64) -> Vec<GridPoint> {
    let mut factors: Vec<Factor> = Vec::new();
    for d in grid_deltas() {
        for b in grid_betas() {
            factors.push(Factor::Free { delta: d.clone(), beta: b });
        }
    }
    factors.extend(grid_betas().into_iter().map(|beta| Factor::Trivial { beta }));
    let mut jobs = Vec::new();
    for a in grid_alphas() {
        for bottom in &factors {
            for top in &factors {
                jobs.push((a.clone(), bottom.clone(), top.clone()));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(alpha, bottom, top)| {
            let prob = ObstructionProblem { i: 1, alpha: alpha.clone(), bottom, top, degree };
            GridPoint {
                case: prob.case(),
                alpha: fmt_rational(&alpha),
                i0: find_i0(&prob, window, max_i0),
                bottom: prob.bottom,
                top: prob.top,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(d: i64, b: i64) -> Factor {
        Factor::free(rat(d), rat(b)).unwrap()
    }

    fn trivial(b: i64) -> Factor {
        Factor::Trivial { beta: rat(b) }
    }

    fn problem(i: i64, bottom: Factor, top: Factor, degree: u32) -> ObstructionProblem {
        ObstructionProblem { i, alpha: rat(0), bottom, top, degree }
    }

    fn mono(l: u32, m: u32, d: u32) -> Monomial {
        Monomial::from_pairs([(Var::l(), l), (Var::m(), m), (Var::d(), d)].into_iter().filter(|p| p.1 > 0))
    }

    #[test]
    fn series_grammar() {
        let s = parse_series("M:1/0;C:2;M:3/1").unwrap();
        assert_eq!(s, vec![free(1, 0), trivial(2), free(3, 1)]);
        assert_eq!(format_series(&s), "M:1/0;C:2;M:3/1");
        assert!(parse_series("M:0/1").is_err());
        assert!(parse_series("X:1").is_err());
    }

    #[test]
    fn free_free_large_grade() {
        let c = certify_trivial_action(&problem(20, free(1, 0), free(2, 0), 6));
        assert_eq!(c.case, 1);
        assert!(c.trivial);
        assert_eq!(c.rank, c.unknowns);
    }

    #[test]
    fn linear_ansatz_rows() {
        let p = ObstructionProblem { i: 20, alpha: rat(1) / rat(2), bottom: free(1, 1), top: free(2, -2), degree: 1 };
        let sys = build_case_system(&p).restrict(&[mono(1, 1, 0), mono(0, 1, 1), mono(0, 1, 0)]);
        assert_eq!(sys.rows.len(), 3);
        assert!(sys.nullspace().is_empty());
    }

    #[test]
    fn trivial_factors() {
        for i in [1, 5, 30] {
            assert!(certify_trivial_action(&problem(i, trivial(1), trivial(-2), 6)).trivial);
            assert!(certify_trivial_action(&problem(i, trivial(0), free(2, 1), 6)).trivial);
        }
        // The ∂-coefficient rows alone settle the free/trivial case.
        let p = problem(7, free(3, 0), trivial(1), 6);
        let sys = build_case_system(&p);
        let d_rows: Vec<Monomial> = sys.rows.iter().map(|r| r.0.clone()).filter(|m| m.degree_in(Var::d()) == 1).collect();
        assert!(sys.restrict(&d_rows).nullspace().is_empty());
    }

    #[test]
    fn small_grade_admits_a_nonzero_action() {
        let hits: Vec<i64> = (0..=4)
            .filter(|&i| !certify_trivial_action(&problem(i, free(3, 0), free(3, 0), 6)).trivial)
            .collect();
        assert!(!hits.is_empty());
    }

    #[test]
    fn nullspace_vectors_solve_the_relation() {
        for i in 0..=4 {
            let p = problem(i, free(3, 0), free(3, 0), 6);
            for v in build_case_system(&p).nullspace() {
                let q = polynomial_of(&p, &v);
                let eq = p.equation(&|x, y| {
                    let mut b = BTreeMap::new();
                    b.insert(Var::l(), x.clone());
                    b.insert(Var::d(), y.clone());
                    q.substitute(&b)
                });
                assert!(eq.is_zero());
            }
        }
    }

    #[test]
    fn degree_bound_examples() {
        let r = degree_bound_check(&rat(1), &rat(1), 2, 10..=10).unwrap();
        assert_eq!((r.rows[0].lhs.as_str(), r.rows[0].rhs.as_str()), ("2200", "1210"));
        let r = degree_bound_check(&rat(2), &rat(-1), 3, 1..=30).unwrap();
        assert!(r.rows.iter().all(|x| x.lhs == "0"));
        assert!(r.bound.is_some());
    }

    #[test]
    fn module_certificates() {
        let c = no_finite_module_certificate(&[free(1, 0)], &rat(0), 10, 5, 6).unwrap();
        assert!(c.certified);
        let s = parse_series("C:0;M:2/1").unwrap();
        let c = no_finite_module_certificate(&s, &(rat(1) / rat(2)), 10, 5, 6).unwrap();
        assert!(c.certified);
        assert_eq!(c.checks, 6 * 4);
    }
}
