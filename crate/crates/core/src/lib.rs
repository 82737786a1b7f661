//! Exact construction and verification of Brauer trees, Brauer tree algebras
//! and Rickard tilting complexes for principal blocks in the Coxeter case.

pub mod arith;
pub mod brauer_tree;
pub mod cyclo;
pub mod ell_arith;
pub mod error;
pub mod fixtures;
pub mod homotopy;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod root_data;
pub mod selftest;
pub mod tree_algebra;

pub use error::{Error, RegimeReason, Result};
