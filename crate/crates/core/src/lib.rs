//! Reductions from grid-graph Hamiltonicity to optimally solving generalized
//! Rubik's Squares and Cubes, with simulators, certificate synthesis,
//! closed-form coloring predictors and exhaustive oracles.

pub mod certificates;
pub mod coloring;
pub mod corpus;
pub mod error;
pub mod hampath;
pub mod puzzle;
pub mod reduction;
pub mod selftest;
pub mod solver;

pub use error::{Error, Result};
