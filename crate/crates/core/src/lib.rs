//! Exact generation and verification of the higher-order q-Dolan-Grady
//! relations of the q-Onsager algebra.

pub mod cli;
pub mod coefficients;
pub mod error;
pub mod exactring;
pub mod freealg;
pub mod matrixrep;
pub mod qnumbers;
pub mod rewrite;
pub mod verify;

pub use error::{Error, Result};

#[cfg(test)]
pub(crate) mod testutil;
