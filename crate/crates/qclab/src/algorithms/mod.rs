//! The algorithm zoo, instrumented for query counting.
//!
//! Every algorithm touches its input only through a [`CountingOracle`];
//! [`Algorithm`] is the config-addressable wrapper the harness runs.

mod gf2;
mod majority;
mod or_search;
mod parity;
mod qcount;
mod simon;
mod threshold;

pub use gf2::{gf2_rank, SpanTracker};
pub use majority::{
    classical_majority_sampler, default_reps, majority_avg, majority_query_cap, MajorityParams,
};
pub use or_search::{
    classical_or_sampler, grover_or, grover_query_cap, grover_stage, grover_stage_circuit,
    grover_success_probability, GroverParams,
};
pub use parity::{parity_exact_quantum, parity_self_reduce, parity_third_wrapper, ParityInner};
pub use qcount::{
    estimate_from_outcome, qcount, qcount_circuit_distribution, qcount_error_bound,
    qcount_outcome_distribution, sample_outcome, QcountError, QcountMode,
};
pub use simon::{
    simon_first_phase_decides, simon_query_cap, simon_round, simon_round_circuit,
    simon_zero_error, DEFAULT_ROUNDS_PER_N,
};
pub use threshold::{threshold_query_cap, threshold_sampler, ThresholdParams};

use crate::oracle::{BooleanFunction, CountingOracle, OracleError, QueryUnit};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgoError {
    #[error(transparent)]
    Qcount(#[from] QcountError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("algorithm `{algorithm}` cannot run on this input: {reason}")]
    Incompatible { algorithm: String, reason: String },
}

/// Failure model of an algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoKind {
    Deterministic,
    ClassicalRandomized,
    Quantum,
}

impl std::fmt::Display for AlgoKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AlgoKind::Deterministic => "deterministic",
            AlgoKind::ClassicalRandomized => "classical-randomized",
            AlgoKind::Quantum => "quantum",
        };
        f.write_str(s)
    }
}

/// A runnable, named algorithm with its tunables pinned.
#[derive(Debug, Clone)]
pub enum Algorithm {
    /// Queries every bit and evaluates the target function: the
    /// deterministic baseline.
    FullCount(BooleanFunction),
    ThresholdSampler(ThresholdParams),
    SimonZeroError { rounds_per_n: u64 },
    GroverOr(GroverParams),
    ClassicalOrSampler,
    ParityExactQuantum,
    ParityThirdWrapper,
    ParitySelfReduce { inner: ParityInner },
    ClassicalMajoritySampler { sample_size: u64 },
    MajorityAvg(MajorityParams),
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::FullCount(_) => "full-count",
            Algorithm::ThresholdSampler(_) => "threshold-sampler",
            Algorithm::SimonZeroError { .. } => "simon-zero-error",
            Algorithm::GroverOr(_) => "grover-or",
            Algorithm::ClassicalOrSampler => "classical-or-sampler",
            Algorithm::ParityExactQuantum => "parity-exact-quantum",
            Algorithm::ParityThirdWrapper => "parity-third-wrapper",
            Algorithm::ParitySelfReduce { .. } => "parity-self-reduce",
            Algorithm::ClassicalMajoritySampler { .. } => "classical-majority-sampler",
            Algorithm::MajorityAvg(_) => "majority-avg",
        }
    }

    pub fn kind(&self) -> AlgoKind {
        match self {
            Algorithm::FullCount(_) => AlgoKind::Deterministic,
            Algorithm::ThresholdSampler(_)
            | Algorithm::ClassicalOrSampler
            | Algorithm::ClassicalMajoritySampler { .. } => AlgoKind::ClassicalRandomized,
            _ => AlgoKind::Quantum,
        }
    }

    /// Oracle unit this algorithm queries in.
    pub fn unit(&self) -> QueryUnit {
        match self {
            Algorithm::SimonZeroError { .. } => QueryUnit::Block,
            _ => QueryUnit::Bit,
        }
    }

    /// Whether the output is guaranteed correct on every input.
    pub fn zero_error(&self) -> bool {
        matches!(
            self,
            Algorithm::FullCount(_)
                | Algorithm::SimonZeroError { .. }
                | Algorithm::ClassicalOrSampler
                | Algorithm::ParityExactQuantum
                | Algorithm::ParitySelfReduce {
                    inner: ParityInner::Exact
                }
        )
    }

    /// Tunables echoed into run metadata.
    pub fn tunables(&self) -> String {
        match self {
            Algorithm::FullCount(f) => format!("target={}", f.name()),
            Algorithm::ThresholdSampler(p) => format!(
                "theta={}/{};batch_scale={};start_i={};early_exit=2/10;certified_fraction=3/10",
                p.theta.0, p.theta.1, p.batch_scale, p.start_i
            ),
            Algorithm::SimonZeroError { rounds_per_n } => {
                format!("rounds_per_n={rounds_per_n}")
            }
            Algorithm::GroverOr(p) => format!(
                "growth={}/{};budget_mult={}",
                p.growth.0, p.growth.1, p.budget_mult
            ),
            Algorithm::ClassicalOrSampler
            | Algorithm::ParityExactQuantum
            | Algorithm::ParityThirdWrapper => String::new(),
            Algorithm::ParitySelfReduce { inner } => format!(
                "inner={}",
                match inner {
                    ParityInner::Exact => "parity-exact-quantum",
                    ParityInner::ThirdWrapper => "parity-third-wrapper",
                }
            ),
            Algorithm::ClassicalMajoritySampler { sample_size } => {
                format!("sample_size={sample_size}")
            }
            Algorithm::MajorityAvg(p) => format!(
                "stage_c={};count_k={};reps={}",
                p.stage_c,
                p.count_k,
                p.reps.map_or("auto".into(), |r| r.to_string())
            ),
        }
    }

    /// Structural bound on the query count of one run on an N-bit input.
    pub fn query_cap(&self, arity: usize) -> u64 {
        match self {
            Algorithm::FullCount(_) => arity as u64,
            Algorithm::ThresholdSampler(p) => threshold_query_cap(arity, p),
            Algorithm::SimonZeroError { rounds_per_n } => {
                let n = block_width_of(arity);
                simon_query_cap(n, *rounds_per_n)
            }
            Algorithm::GroverOr(p) => grover_query_cap(arity, p),
            Algorithm::ClassicalOrSampler => arity as u64,
            Algorithm::ParityExactQuantum
            | Algorithm::ParitySelfReduce {
                inner: ParityInner::Exact,
            } => arity.div_ceil(2) as u64,
            Algorithm::ParityThirdWrapper
            | Algorithm::ParitySelfReduce {
                inner: ParityInner::ThirdWrapper,
            } => arity.div_ceil(2) as u64,
            Algorithm::ClassicalMajoritySampler { sample_size } => *sample_size,
            Algorithm::MajorityAvg(p) => majority_query_cap(arity, p),
        }
    }

    /// One run against a fresh oracle. The oracle's counters carry the
    /// realized query count afterwards.
    pub fn run<R: Rng>(&self, oracle: &mut CountingOracle, rng: &mut R) -> Result<u8, AlgoError> {
        match self {
            Algorithm::FullCount(f) => {
                let n = oracle.arity();
                let mut bits = Vec::with_capacity(n);
                for i in 0..n {
                    bits.push(oracle.query_bit(i)?);
                }
                let mut x = crate::oracle::BitInput::from_bits(&bits);
                if let Some(w) = oracle.block_width() {
                    x = x.with_block_width(w)?;
                }
                Ok(f.evaluate(&x)?)
            }
            Algorithm::ThresholdSampler(p) => Ok(threshold_sampler(oracle, rng, p)),
            Algorithm::SimonZeroError { rounds_per_n } => {
                if oracle.block_width().is_none() {
                    return Err(AlgoError::Incompatible {
                        algorithm: self.name().into(),
                        reason: "requires a block-layout input".into(),
                    });
                }
                Ok(simon_zero_error(oracle, rng, *rounds_per_n))
            }
            Algorithm::GroverOr(p) => {
                if !oracle.arity().is_power_of_two() {
                    return Err(AlgoError::Incompatible {
                        algorithm: self.name().into(),
                        reason: "requires a power-of-two input size".into(),
                    });
                }
                Ok(grover_or(oracle, rng, p))
            }
            Algorithm::ClassicalOrSampler => Ok(classical_or_sampler(oracle, rng)),
            Algorithm::ParityExactQuantum => Ok(parity_exact_quantum(oracle)),
            Algorithm::ParityThirdWrapper => Ok(parity_third_wrapper(oracle, rng)),
            Algorithm::ParitySelfReduce { inner } => Ok(parity_self_reduce(oracle, rng, *inner)),
            Algorithm::ClassicalMajoritySampler { sample_size } => {
                if *sample_size > oracle.arity() as u64 {
                    return Err(AlgoError::Incompatible {
                        algorithm: self.name().into(),
                        reason: "sample size exceeds the input size".into(),
                    });
                }
                Ok(classical_majority_sampler(oracle, *sample_size, rng))
            }
            Algorithm::MajorityAvg(p) => Ok(majority_avg(oracle, rng, p)?),
        }
    }
}

fn block_width_of(arity: usize) -> usize {
    // Inverts N = n * 2^n for the block layout sizes in play.
    for n in 1..=16 {
        if n << n == arity {
            return n;
        }
    }
    panic!("{arity} is not of the form n * 2^n");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::InputDistribution;
    use crate::oracle::BitInput;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn counters_match_declared_structure() {
        // The oracle's total equals what each algorithm's shape implies.
        let mut r = ChaCha12Rng::seed_from_u64(99);
        let d = InputDistribution::simon_d1(3);
        for _ in 0..20 {
            let x = d.sample(&mut r);
            let algo = Algorithm::SimonZeroError { rounds_per_n: 22 };
            let mut oracle = CountingOracle::new_block(x).unwrap();
            algo.run(&mut oracle, &mut r).unwrap();
            assert!(oracle.total_queries() <= algo.query_cap(24));
            assert!(oracle.quantum_queries() >= 66);
        }
    }

    #[test]
    fn full_count_is_exact_with_n_queries() {
        let f = BooleanFunction::maj(9);
        let algo = Algorithm::FullCount(f.clone());
        let mut r = ChaCha12Rng::seed_from_u64(1);
        for v in [0u64, 5, 511, 0b101010101] {
            let x = BitInput::from_u64(9, v);
            let mut oracle = CountingOracle::new_bit(x.clone());
            let out = algo.run(&mut oracle, &mut r).unwrap();
            assert_eq!(out, f.evaluate(&x).unwrap());
            assert_eq!(oracle.total_queries(), 9);
        }
    }

    #[test]
    fn incompatible_configurations_are_rejected() {
        let mut r = ChaCha12Rng::seed_from_u64(2);
        let algo = Algorithm::GroverOr(GroverParams::default());
        let mut oracle = CountingOracle::new_bit(BitInput::zeros(10));
        assert!(matches!(
            algo.run(&mut oracle, &mut r),
            Err(AlgoError::Incompatible { .. })
        ));
    }
}
