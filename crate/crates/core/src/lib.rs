pub mod annihilation;
pub mod arith;
pub mod catalog;
pub mod classification;
pub mod cli;
pub mod conformal;
pub mod error;
pub mod obstruction;
pub mod structure;

pub use error::{Error, Result};
