//! Lie-algebraic analysis of QAOA circuits for MaxCut.

pub mod ansatz;
pub mod characters;
pub mod cli;
pub mod closure;
pub mod echelon;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod graph;
pub mod linsolve;
pub mod pauli;
pub mod rational;
pub mod report;
pub mod sim;
pub mod symmetry;

pub use error::{Error, Result};
