//! Ideal closure, local nilpotence and isomorphism rigidity.

pub mod ideal;
pub mod iso;
pub mod nilpotent;

pub use ideal::{abelian_control, ideal_closure, is_simple_truncated, GradedIdealState, SimplicityCertificate};
pub use iso::{iso_rigidity_solve, IsoSolution};
pub use nilpotent::{locally_nilpotent_test, NilpotentVerdict};
