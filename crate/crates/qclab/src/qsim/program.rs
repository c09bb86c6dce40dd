use super::state::{QuantumState, Register};
use super::QsimError;
use crate::oracle::CountingOracle;
use rand::Rng;

/// The gate vocabulary the interpreted programs need.
#[derive(Debug, Clone, Copy)]
pub enum Gate {
    Hadamard(Register),
    PauliX(usize),
}

/// One program step. A `Unitary` groups the gates of a single inter-query
/// transformation; the flag qubit is measured after each one.
#[derive(Debug, Clone)]
pub enum Step {
    Unitary(Vec<Gate>),
    /// The single oracle-query step kind: |i>|b> -> |i>|b ^ x_i>.
    Query { index: Register, target: Register },
    /// Mid-run projective measurement whose outcome is recorded.
    Measure(Register),
}

/// A straight-line query program with the early-stopping protocol: after
/// every unitary step the flag qubit is measured projectively; a 1 stops
/// the run and the output qubit is measured and returned.
#[derive(Debug, Clone)]
pub struct QueryProgram {
    pub qubits: usize,
    pub flag: usize,
    pub output: usize,
    pub steps: Vec<Step>,
}

/// What a single execution produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgramRun {
    pub output: u8,
    /// Oracle queries charged up to the moment the run stopped.
    pub queries: u64,
    /// Whether the flag protocol fired before the program ran out.
    pub stopped_early: bool,
    /// Outcomes of explicit `Measure` steps, in order.
    pub recorded: Vec<u64>,
}

/// Executes `program` against `oracle`. The query count in the result is
/// the realized (random) count for this run.
pub fn run_program<R: Rng>(
    program: &QueryProgram,
    oracle: &mut CountingOracle,
    rng: &mut R,
) -> Result<ProgramRun, QsimError> {
    if program.flag >= program.qubits || program.output >= program.qubits {
        return Err(QsimError::MalformedProgram(
            "flag and output qubits must be designated inside the state".into(),
        ));
    }
    let start_queries = oracle.quantum_queries() + oracle.classical_queries();
    let mut state = QuantumState::new(program.qubits)?;
    let flag_reg = Register::new(program.flag, 1);
    let output_reg = Register::new(program.output, 1);
    let mut recorded = Vec::new();

    for step in &program.steps {
        match step {
            Step::Unitary(gates) => {
                for gate in gates {
                    match gate {
                        Gate::Hadamard(reg) => state.hadamard(*reg)?,
                        Gate::PauliX(q) => state.pauli_x(*q)?,
                    }
                }
                if state.measure(flag_reg, rng)? == 1 {
                    let output = state.measure(output_reg, rng)? as u8;
                    let queries =
                        oracle.quantum_queries() + oracle.classical_queries() - start_queries;
                    return Ok(ProgramRun {
                        output,
                        queries,
                        stopped_early: true,
                        recorded,
                    });
                }
            }
            Step::Query { index, target } => {
                state.apply_xor_query(oracle, *index, *target)?;
            }
            Step::Measure(reg) => {
                recorded.push(state.measure(*reg, rng)?);
            }
        }
    }

    let output = state.measure(output_reg, rng)? as u8;
    let queries = oracle.quantum_queries() + oracle.classical_queries() - start_queries;
    Ok(ProgramRun {
        output,
        queries,
        stopped_early: false,
        recorded,
    })
}

/// One leaf of the branch enumeration: a complete assignment of outcomes
/// to every measurement the program performed on this path.
#[derive(Debug, Clone)]
pub struct BranchLeaf {
    pub probability: f64,
    pub queries: u64,
    pub output: u8,
    pub stopped_early: bool,
    pub recorded: Vec<u64>,
}

/// Exact distribution of a program's behaviour on one input, obtained by
/// enumerating every measurement branch of positive probability.
#[derive(Debug, Clone)]
pub struct BranchEnumeration {
    pub leaves: Vec<BranchLeaf>,
}

impl BranchEnumeration {
    /// The exact expected query count of the program on this input.
    pub fn expected_queries(&self) -> f64 {
        self.leaves
            .iter()
            .map(|l| l.probability * l.queries as f64)
            .sum()
    }

    pub fn output_one_probability(&self) -> f64 {
        self.leaves
            .iter()
            .filter(|l| l.output == 1)
            .map(|l| l.probability)
            .sum()
    }

    pub fn total_probability(&self) -> f64 {
        self.leaves.iter().map(|l| l.probability).sum()
    }
}

/// Exact branch-enumeration mode: walks every measurement outcome of
/// positive probability instead of sampling, and returns the full leaf
/// distribution. Refuses programs whose branch count exceeds `cap`
/// (10^6 is a sensible ceiling).
pub fn enumerate_program_branches(
    program: &QueryProgram,
    oracle: &CountingOracle,
    cap: usize,
) -> Result<BranchEnumeration, QsimError> {
    if program.flag >= program.qubits || program.output >= program.qubits {
        return Err(QsimError::MalformedProgram(
            "flag and output qubits must be designated inside the state".into(),
        ));
    }
    let state = QuantumState::new(program.qubits)?;
    let mut leaves = Vec::new();
    let mut frontier = vec![Branch {
        state,
        probability: 1.0,
        queries: 0,
        recorded: Vec::new(),
    }];
    let flag_reg = Register::new(program.flag, 1);
    let output_reg = Register::new(program.output, 1);

    for step in &program.steps {
        let mut next = Vec::with_capacity(frontier.len());
        for mut branch in frontier {
            match step {
                Step::Unitary(gates) => {
                    for gate in gates {
                        match gate {
                            Gate::Hadamard(reg) => branch.state.hadamard(*reg)?,
                            Gate::PauliX(q) => branch.state.pauli_x(*q)?,
                        }
                    }
                    // Flag measurement forks the path; flag = 1 resolves
                    // the output and terminates the branch.
                    let flag_probs = branch.state.register_distribution(flag_reg)?;
                    if flag_probs[1] > 0.0 {
                        let mut stopped = branch.clone();
                        stopped.probability *= flag_probs[1];
                        stopped.state.collapse(flag_reg, 1, flag_probs[1])?;
                        split_on_output(&stopped, output_reg, true, &mut leaves)?;
                    }
                    if flag_probs[0] > 0.0 {
                        branch.probability *= flag_probs[0];
                        branch.state.collapse(flag_reg, 0, flag_probs[0])?;
                        next.push(branch);
                    }
                }
                Step::Query { index, target } => {
                    let mut scratch = oracle.clone();
                    branch.state.apply_xor_query(&mut scratch, *index, *target)?;
                    branch.queries += 1;
                    next.push(branch);
                }
                Step::Measure(reg) => {
                    let probs = branch.state.register_distribution(*reg)?;
                    for (outcome, &p) in probs.iter().enumerate() {
                        if p <= 0.0 {
                            continue;
                        }
                        let mut fork = branch.clone();
                        fork.probability *= p;
                        fork.state.collapse(*reg, outcome as u64, p)?;
                        fork.recorded.push(outcome as u64);
                        next.push(fork);
                    }
                }
            }
            if next.len() + leaves.len() > cap {
                return Err(QsimError::MalformedProgram(format!(
                    "branch enumeration exceeds the cap of {cap}"
                )));
            }
        }
        frontier = next;
    }
    for branch in frontier {
        split_on_output(&branch, output_reg, false, &mut leaves)?;
    }
    Ok(BranchEnumeration { leaves })
}

#[derive(Clone)]
struct Branch {
    state: QuantumState,
    probability: f64,
    queries: u64,
    recorded: Vec<u64>,
}

fn split_on_output(
    branch: &Branch,
    output_reg: Register,
    stopped_early: bool,
    leaves: &mut Vec<BranchLeaf>,
) -> Result<(), QsimError> {
    let probs = branch.state.register_distribution(output_reg)?;
    for (bit, &p) in probs.iter().enumerate() {
        if p > 0.0 {
            leaves.push(BranchLeaf {
                probability: branch.probability * p,
                queries: branch.queries,
                output: bit as u8,
                stopped_early,
                recorded: branch.recorded.clone(),
            });
        }
    }
    Ok(())
}
