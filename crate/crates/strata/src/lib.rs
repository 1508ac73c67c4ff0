//! Exact computation of stratification data for finite-dimensional algebras.

pub mod algebra;
pub mod borel;
pub mod claims;
pub mod compat;
pub mod corpus;
pub mod error;
pub mod input;
pub mod kernel;
pub mod modules;
pub mod strat;
pub mod vmult;

pub use error::{Error, Result};
