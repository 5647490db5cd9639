//! Exact arithmetic: rationals, sparse polynomials over named
//! indeterminates, rational functions, and linear algebra.

pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod var;

pub use linalg::{mat_vec, nullspace, solve_linear, Field, LinearSolution};
pub use poly::{univariate_gcd, Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use rational::{fmt_rational, frac, parse_rational, rat, Rational};
pub use var::Var;
