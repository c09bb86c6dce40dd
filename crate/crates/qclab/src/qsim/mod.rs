//! Exact dense state-vector simulation of the quantum query model.
//!
//! States are complex amplitude vectors over `m` qubits (qubit `q` is bit
//! `q` of the basis index). The oracle unitary |i,b,z> -> |i, b^x_i, z> is
//! realised by permuting amplitudes and charges one quantum query per
//! application, controlled or not. Measurements are projective and
//! renormalise the state.

mod program;
mod state;

pub use program::{
    enumerate_program_branches, run_program, BranchEnumeration, BranchLeaf, Gate, ProgramRun,
    QueryProgram, Step,
};
pub use state::{pair_parity_query, QuantumState, Register, DEFAULT_QUBIT_CAP};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QsimError {
    #[error("{requested} qubits exceed the simulator cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },
    #[error("register [{offset}, {offset}+{width}) lies outside {m} qubits")]
    RegisterOutOfRange {
        offset: usize,
        width: usize,
        m: usize,
    },
    #[error("register width {width} does not address an oracle domain of size {domain}")]
    WidthMismatch { width: usize, domain: usize },
    #[error("measurement hit an outcome of zero probability; this is a simulator bug")]
    ImpossibleOutcome,
    #[error("program is malformed: {0}")]
    MalformedProgram(String),
}
