//! Command-line front end. [`run`] is the whole program minus process
//! exit, so it can be driven from tests.

pub mod report;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::annihilation::{check_block_closed_form, check_lie_axioms, modes_up_to};
use crate::arith::{parse_rational, Rational};
use crate::catalog::module::{check_module_axioms, make_vir_module, VirModuleSpec};
use crate::catalog::{make_virasoro, parse_descriptor};
use crate::classification::{classify_all, AlphaBranch, CaseTag};
use crate::conformal::{verify_axioms, Param};
use crate::error::{Error, Result};
use crate::obstruction::{no_finite_module_certificate, parse_series};
use crate::structure::{is_simple_truncated, iso_rigidity_solve};

use report::Envelope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "conformal-kit", version, about = "Exact checks for graded Lie conformal algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Worker threads; falls back to CONFORMAL_KIT_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// `vir`, `gc1`, `B1:alpha=<r|sym>` or `B2:alpha=<r|sym>`.
    #[arg(long)]
    pub algebra: String,
    #[arg(long = "max-degree", default_value_t = 3)]
    pub max_degree: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Skew-symmetry and Jacobi on all generator pairs and triples.
    Axioms(AlgebraArgs),
    /// Brackets of generators.
    Table(AlgebraArgs),
    /// Annihilation algebra of B(2, α) against its closed form.
    Annihilation {
        #[arg(long, default_value = "sym")]
        alpha: String,
        #[arg(long = "max-degree", default_value_t = 3)]
        max_degree: i64,
        /// Index and mode bound for the Lie axiom check.
        #[arg(long = "lie-bound", default_value_t = 2)]
        lie_bound: i64,
    },
    /// Truncated ideal closure from generators and random elements.
    Simplicity {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 10)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Isomorphisms B(s, α₁) → B(s, α₂) of the normalized form.
    Iso {
        #[arg(long, default_value_t = 1)]
        s: u8,
        #[arg(long)]
        alpha1: String,
        #[arg(long)]
        alpha2: String,
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// Derives the structure functions of a graded algebra and identifies it.
    Classify {
        #[arg(long, default_value = "sym")]
        alpha: String,
        #[arg(long = "max-degree", default_value_t = 6)]
        max_degree: i64,
        #[arg(long, default_value = "all")]
        branch: String,
        /// Ansatz degree for the unknown structure functions.
        #[arg(long, default_value_t = 6)]
        deg: usize,
    },
    /// Trivial-action certificate for a composition series.
    Obstruction {
        /// e.g. `M:1/0;C:2;M:3/1`, bottom factor first.
        #[arg(long)]
        series: String,
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        i0: i64,
        #[arg(long, default_value_t = 20)]
        window: i64,
        #[arg(long, default_value_t = 6)]
        deg: u32,
    },
    /// Module axioms for a rank-one Virasoro module.
    ModuleCheck {
        /// `M:<Δ>/<α>` or `C:<β>`; any value may be `sym`.
        #[arg(long)]
        module: String,
        #[arg(long = "max-degree", default_value_t = 0)]
        max_degree: i64,
    },
    /// Rank of each graded piece.
    Ranks(AlgebraArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Axioms(_) => "axioms",
            Command::Table(_) => "table",
            Command::Annihilation { .. } => "annihilation",
            Command::Simplicity { .. } => "simplicity",
            Command::Iso { .. } => "iso",
            Command::Classify { .. } => "classify",
            Command::Obstruction { .. } => "obstruction",
            Command::ModuleCheck { .. } => "module-check",
            Command::Ranks(_) => "ranks",
        }
    }
}

fn threads(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("CONFORMAL_KIT_THREADS").ok()?.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or(0)
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code with the rendered report.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads(cli.threads)).build() {
        Ok(p) => p,
        Err(e) => return (1, format!("error: {e}\n")),
    };
    let env = pool.install(|| execute(&cli.command)).unwrap_or_else(|e| Envelope::failure(cli.command.name(), e.to_string()));
    let rendered = match cli.format {
        Format::Json => env.json(),
        Format::Text => env.text(),
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            return (1, format!("error: cannot write {}: {e}\n", path.display()));
        }
    }
    (if env.passed { 0 } else { 1 }, rendered)
}

fn parse_param(s: &str) -> Result<Param> {
    Param::parse_alpha(s)
}

fn execute(cmd: &Command) -> Result<Envelope> {
    let name = cmd.name();
    match cmd {
        Command::Axioms(a) => {
            let alg = parse_descriptor(&a.algebra)?;
            let r = verify_axioms(&alg, a.max_degree)?;
            let text = vec![
                format!("{}: {} pairs, {} triples, indices ≤ {}", r.algebra, r.pairs_checked, r.triples_checked, r.max_index),
                format!("failures: {}", r.failures.len()),
            ];
            Ok(Envelope::new(name, r.passed(), &r, text))
        }
        Command::Table(a) => table(name, a),
        Command::Annihilation { alpha, max_degree, lie_bound } => {
            let alg = parse_descriptor(&format!("B2:alpha={alpha}"))?;
            let a = alg.alpha().expect("B(2, α) has α").to_poly();
            let closed = check_block_closed_form(&alg, &a, *max_degree)?;
            let lie = check_lie_axioms(&alg, &modes_up_to(&alg, *lie_bound, (*lie_bound + 1) as u32))?;
            #[derive(Serialize)]
            struct R<'a> {
                algebra: &'a str,
                closed_form: &'a crate::annihilation::ClosedFormReport,
                lie: &'a crate::annihilation::LieReport,
            }
            let text = vec![
                format!("{}: {} brackets compared, {} mismatches", alg.name(), closed.compared, closed.mismatches.len()),
                format!(
                    "Lie axioms on {} modes: {} antisymmetry, {} Jacobi failures",
                    lie.elements,
                    lie.antisymmetry_failures.len(),
                    lie.jacobi_failures.len()
                ),
            ];
            let passed = closed.passed() && lie.passed();
            Ok(Envelope::new(name, passed, R { algebra: alg.name(), closed_form: &closed, lie: &lie }, text))
        }
        Command::Simplicity { algebra, random, seed } => {
            let alg = parse_descriptor(&algebra.algebra)?;
            let r = is_simple_truncated(&alg, algebra.max_degree, *random, *seed)?;
            let mut text = vec![format!("{} (D = {}), {} seeds", r.algebra, r.bound, r.seeds.len())];
            for s in r.seeds.iter().filter(|s| !s.full) {
                text.push(format!("not full from {}: {:?}", s.seed, s.ideal));
            }
            Ok(Envelope::new(name, r.certified, &r, text))
        }
        Command::Iso { s, alpha1, alpha2, deg } => {
            let (a1, a2) = (parse_rational(alpha1)?, parse_rational(alpha2)?);
            let sols = iso_rigidity_solve(*s, &a1, &a2, *deg)?;
            #[derive(Serialize)]
            struct R<'a> {
                s: u8,
                alpha1: &'a str,
                alpha2: &'a str,
                ansatz_degree: usize,
                solutions: &'a [crate::structure::IsoSolution],
            }
            // Isomorphisms exist exactly when the parameters agree.
            let passed = sols.is_empty() != (a1 == a2);
            let mut text = vec![format!("B({s},{alpha1}) → B({s},{alpha2}): {} solution families", sols.len())];
            text.extend(sols.iter().map(|x| format!("b0 = {}, a ∈ span{{{}}}", x.b0, x.a_basis.join(", "))));
            Ok(Envelope::new(name, passed, R { s: *s, alpha1, alpha2, ansatz_degree: *deg, solutions: &sols }, text))
        }
        Command::Classify { alpha, max_degree, branch, deg } => {
            let alphas = match parse_param(alpha)? {
                Param::Symbol(_) => vec![AlphaBranch::NonzeroSymbol, AlphaBranch::Value(Rational::from_integer(0.into()))],
                Param::Value(v) => vec![AlphaBranch::Value(v)],
            };
            let filter = match branch.as_str() {
                "all" => None,
                b => Some(CaseTag::parse(b).ok_or_else(|| Error::InvalidParameter(format!("unknown branch `{b}`")))?),
            };
            let mut r = classify_all(&alphas, *max_degree, *deg)?;
            if let Some(tag) = filter {
                r.branches.retain(|b| b.branch == tag.name());
            }
            let mut text = vec![format!("classification through grade {}", r.max_degree)];
            for b in &r.branches {
                let outcome = match &b.identified_as {
                    Some(alg) => format!("{} ≅ {alg}, Δ = {:?}", b.branch, b.delta),
                    None => format!("contradiction: {}", b.witness.as_deref().unwrap_or("")),
                };
                text.push(format!("[{}, a⁰ {}] {outcome}", b.alpha, if b.a0_nonzero { "≠ 0" } else { "= 0" }));
            }
            text.push(format!("identified: {}", r.identified().join(", ")));
            let passed = filter.is_none_or(|_| !r.branches.is_empty());
            Ok(Envelope::new(name, passed, &r, text))
        }
        Command::Obstruction { series, alpha, i0, window, deg } => {
            let s = parse_series(series)?;
            let c = no_finite_module_certificate(&s, &parse_rational(alpha)?, *i0, *window, *deg)?;
            let mut text = vec![format!(
                "series {} (α = {}): {} checks for i ∈ [{}, {}]",
                c.series,
                c.alpha,
                c.checks,
                c.i0,
                c.i0 + c.window
            )];
            if let Some(r) = &c.refusal {
                text.push(format!("refused at i = {}, case {}, factors {} → {}: {:?}", r.i, r.case, r.bottom, r.top, r.counterexamples));
            }
            Ok(Envelope::new(name, c.certified, &c, text))
        }
        Command::ModuleCheck { module, max_degree } => {
            let spec = parse_module(module)?;
            let r = check_module_axioms(&make_virasoro(), &make_vir_module(spec), *max_degree)?;
            let text = vec![format!("{} over {}: {} pairs, {} failures", r.module, r.algebra, r.pairs_checked, r.failures.len())];
            Ok(Envelope::new(name, r.passed(), &r, text))
        }
        Command::Ranks(a) => {
            let alg = parse_descriptor(&a.algebra)?;
            #[derive(Serialize)]
            struct R {
                algebra: String,
                graded: bool,
                ranks: BTreeMap<i64, usize>,
            }
            if !alg.is_graded() {
                let text = vec![format!("{}: not graded", alg.name())];
                return Ok(Envelope::new(name, true, R { algebra: alg.name().into(), graded: false, ranks: BTreeMap::new() }, text));
            }
            let mut ranks = BTreeMap::new();
            for g in alg.generators_up_to(a.max_degree) {
                *ranks.entry(g.index).or_insert(0) += 1;
            }
            let text = ranks.iter().map(|(i, r)| format!("rank of grade {i}: {r}")).collect();
            Ok(Envelope::new(name, true, R { algebra: alg.name().into(), graded: true, ranks }, text))
        }
    }
}

fn table(name: &str, a: &AlgebraArgs) -> Result<Envelope> {
    let alg = parse_descriptor(&a.algebra)?;
    #[derive(Serialize)]
    struct Entry {
        left: String,
        right: String,
        bracket: Vec<crate::conformal::TermJson>,
    }
    let gens = alg.generators_up_to(a.max_degree);
    let mut entries = Vec::new();
    let mut text = Vec::new();
    for &x in &gens {
        for &y in &gens {
            let e = alg.structure(x, y)?;
            text.push(ascii(&format!("[{x} l {y}] = {}", e.pretty())));
            entries.push(Entry { left: x.to_string(), right: y.to_string(), bracket: e.to_json_terms() });
        }
    }
    #[derive(Serialize)]
    struct R {
        algebra: String,
        entries: Vec<Entry>,
        rows: Vec<String>,
    }
    Ok(Envelope::new(name, true, R { algebra: alg.name().into(), entries, rows: text.clone() }, text))
}

/// `λ`, `∂` as `l`, `d`, and `G_{0}` as `G_0`, for plain-text tables.
fn ascii(s: &str) -> String {
    let mut out = s.replace('λ', "l").replace('∂', "d");
    for k in 0..10 {
        out = out.replace(&format!("_{{{k}}}"), &format!("_{k}"));
    }
    out
}

fn parse_module(s: &str) -> Result<VirModuleSpec> {
    let bad = || Error::InvalidParameter(format!("module `{s}`: expected M:<Δ>/<α> or C:<β>"));
    let (kind, data) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "M" => {
            let (d, a) = data.split_once('/').ok_or_else(bad)?;
            let sym = |x: &str, var: &str| -> Result<Param> {
                if x == "sym" {
                    Ok(Param::Symbol(crate::arith::Var::new(var)))
                } else {
                    Ok(Param::Value(parse_rational(x)?))
                }
            };
            Ok(VirModuleSpec::Free { delta: sym(d, "Delta")?, alpha: sym(a, "am")? })
        }
        "C" if data == "sym" => Ok(VirModuleSpec::symbolic_trivial()),
        "C" => Ok(VirModuleSpec::Trivial { beta: Param::Value(parse_rational(data)?) }),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &str) -> (i32, String) {
        run(std::iter::once("conformal-kit").chain(args.split_whitespace()))
    }

    #[test]
    fn json_envelope_is_versioned() {
        let (code, out) = cli("axioms --algebra vir --max-degree 2");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "axioms");
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn output_is_deterministic_across_thread_counts() {
        let a = cli("--threads 1 classify --alpha sym --max-degree 3 --deg 3");
        let b = cli("--threads 2 classify --alpha sym --max-degree 3 --deg 3");
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }

    #[test]
    fn text_table_uses_plain_symbols() {
        let (code, out) = cli("--format text table --algebra B2:alpha=1/2 --max-degree 0");
        assert_eq!(code, 0);
        assert!(out.contains("[G_0 l G_0] = (2*l + d) G_0"), "{out}");
        let (_, out) = cli("--format text table --algebra B1:alpha=1/2 --max-degree 2");
        assert!(out.contains("[G_{-1} l G_0] = (1/2 - d) G_{-1}"), "{out}");
    }

    #[test]
    fn bad_input_fails() {
        assert_eq!(cli("nonsense").0, 2);
        assert_eq!(cli("axioms").0, 2);
        let (code, out) = cli("axioms --algebra B7:alpha=1");
        assert_eq!(code, 1);
        assert!(out.contains("\"error\""));
        assert_eq!(cli("module-check --module X:1").0, 1);
    }

    #[test]
    fn not_graded_is_reported() {
        let (code, out) = cli("--format text ranks --algebra gc1");
        assert_eq!(code, 0);
        assert!(out.starts_with("gc1: not graded"));
    }

    #[test]
    fn iso_distinguishes_parameters() {
        assert_eq!(cli("iso --s 2 --alpha1 1 --alpha2 3 --deg 3").0, 0);
        assert_eq!(cli("iso --s 1 --alpha1 1/2 --alpha2 1/2 --deg 3").0, 0);
    }
}
