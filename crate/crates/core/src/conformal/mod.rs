//! Lie conformal algebras given by generator families and structure rules.

pub mod algebra;
pub mod axioms;
pub mod bracket;
pub mod element;

pub use algebra::{ConformalAlgebra, Param, StructureRule};
pub use axioms::{check_jacobi, check_skew, verify_axioms, AxiomReport, Check};
pub use bracket::{all_products, bracket, bracket_at, from_products, jth_product, pair_at};
pub use element::{Element, GeneratorId, LambdaElement, TermJson};
