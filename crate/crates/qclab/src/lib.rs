//! Measurement lab for the average-case query cost of classical and
//! quantum black-box algorithms on total Boolean functions.
//!
//! The crate is organised around a counting oracle: algorithms may touch
//! their input only through [`oracle::CountingOracle`], which tallies
//! classical and quantum queries. Quantum algorithms run on an exact
//! dense state-vector simulator ([`qsim`]); the harness estimates
//! distribution-weighted expected query counts and checks correctness
//! guarantees input by input.

pub mod algorithms;
pub mod bounds;
pub mod cli;
pub mod dist;
pub mod harness;
pub mod numeric;
pub mod oracle;
pub mod qsim;
pub mod verify;

pub use oracle::{BitInput, BooleanFunction, CountingOracle, FunctionKind, QueryUnit};
