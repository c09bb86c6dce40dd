//! Quantum counting: phase estimation over the Grover iterate estimates
//! the number t of 1-bits. A phase register of log2(T) qubits drives
//! controlled powers of the iterate (T - 1 oracle applications in total);
//! the measured register value y maps to the estimate
//! t~ = N sin^2(pi y / T), which satisfies
//! |t - t~| <= 2 pi k sqrt(t(N-t))/T + pi^2 k^2 N / T^2
//! with probability at least 8/pi^2 for k = 1 and 1 - 1/(2(k-1)) for k > 1.
//!
//! Two interchangeable realisations exist: the dense circuit, and direct
//! sampling from the closed-form outcome distribution (the measured
//! register value of an eigenphase phi concentrates like a Fejer kernel
//! around T phi / 2 pi). They are cross-validated to machine precision.

use crate::oracle::{BitInput, CountingOracle};
use crate::qsim::{QuantumState, Register, DEFAULT_QUBIT_CAP};
use rand::Rng;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QcountError {
    #[error("query budget T must be a power of two, got {0}")]
    BudgetNotPowerOfTwo(u64),
    #[error("input size must be a power of two, got {0}")]
    SizeNotPowerOfTwo(usize),
}

/// How to realise the counting circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QcountMode {
    /// Dense circuit when small enough, closed form otherwise.
    #[default]
    Auto,
    Circuit,
    ClosedForm,
}

/// Past this many amplitude updates (T * 2^qubits) Auto switches to the
/// closed-form sampler.
const AUTO_CIRCUIT_COST_CAP: u128 = 1 << 22;

/// One counting run: spends the `t_budget` query schedule and returns the
/// estimate. The accuracy parameter `k` does not change the circuit; it
/// selects which guarantee of the estimate the caller relies on and is
/// recorded by the harness.
pub fn qcount<R: Rng>(
    oracle: &mut CountingOracle,
    t_budget: u64,
    k: u64,
    rng: &mut R,
    mode: QcountMode,
) -> Result<f64, QcountError> {
    let _ = k;
    let n = oracle.arity();
    validate(n, t_budget)?;
    let y = match mode {
        QcountMode::Circuit => qcount_circuit_sample(oracle, t_budget, rng),
        QcountMode::ClosedForm => qcount_closed_form_sample(oracle, t_budget, rng),
        QcountMode::Auto => {
            let phase_bits = t_budget.trailing_zeros() as usize;
            let index_bits = n.trailing_zeros() as usize;
            let qubits = phase_bits + index_bits;
            let cost = t_budget as u128 * (1u128 << qubits.min(64));
            if qubits <= DEFAULT_QUBIT_CAP && cost <= AUTO_CIRCUIT_COST_CAP {
                qcount_circuit_sample(oracle, t_budget, rng)
            } else {
                qcount_closed_form_sample(oracle, t_budget, rng)
            }
        }
    };
    Ok(estimate_from_outcome(n as u64, t_budget, y))
}

/// The guarantee radius 2 pi k sqrt(t(N-t))/T + pi^2 k^2 N / T^2.
pub fn qcount_error_bound(t: u64, n: u64, t_budget: u64, k: u64) -> f64 {
    let tf = t as f64;
    let nf = n as f64;
    let tb = t_budget as f64;
    let kf = k as f64;
    2.0 * PI * kf * (tf * (nf - tf)).sqrt() / tb + PI * PI * kf * kf * nf / (tb * tb)
}

/// t~ = N sin^2(pi y / T).
pub fn estimate_from_outcome(n: u64, t_budget: u64, y: u64) -> f64 {
    let s = (PI * y as f64 / t_budget as f64).sin();
    n as f64 * s * s
}

fn validate(n: usize, t_budget: u64) -> Result<(), QcountError> {
    if !t_budget.is_power_of_two() {
        return Err(QcountError::BudgetNotPowerOfTwo(t_budget));
    }
    if !n.is_power_of_two() {
        return Err(QcountError::SizeNotPowerOfTwo(n));
    }
    Ok(())
}

fn qcount_circuit_sample<R: Rng>(oracle: &mut CountingOracle, t_budget: u64, rng: &mut R) -> u64 {
    let phase_bits = t_budget.trailing_zeros() as usize;
    if phase_bits == 0 {
        return 0; // T = 1: no phase register, outcome fixed at 0
    }
    let index_bits = oracle.arity().trailing_zeros() as usize;
    let index = Register::new(0, index_bits);
    let phase = Register::new(index_bits, phase_bits);
    let mut state = QuantumState::new(index_bits + phase_bits).expect("within cap");
    state.hadamard(index).expect("valid register");
    state.hadamard(phase).expect("valid register");
    for j in 0..phase_bits {
        state
            .controlled_grover(oracle, index_bits + j, index, 1 << j)
            .expect("widths match");
    }
    state.inverse_qft(phase).expect("valid register");
    state.measure(phase, rng).expect("normalised state")
}

/// Exact outcome distribution of the phase measurement for a weight-t
/// input, over y in [0, T).
pub fn qcount_outcome_distribution(t: u64, n: u64, t_budget: u64) -> Vec<f64> {
    let t_points = t_budget as usize;
    if t_points == 1 {
        return vec![1.0];
    }
    let mut probs = vec![0.0f64; t_points];
    if t == 0 {
        probs[0] = 1.0;
        return probs;
    }
    if t == n {
        // Eigenphase pi exactly: y = T/2 for even T.
        probs[t_points / 2] = 1.0;
        return probs;
    }
    let theta = (t as f64 / n as f64).sqrt().asin();
    let omega = theta / PI; // phi/(2 pi) for phi = 2 theta
    for (y, p) in probs.iter_mut().enumerate() {
        let frac = y as f64 / t_budget as f64;
        *p = 0.5 * (fejer(omega - frac, t_points) + fejer(-omega - frac, t_points));
    }
    probs
}

/// sin^2(pi T d) / (T^2 sin^2(pi d)), the phase-estimation kernel.
fn fejer(d: f64, t_points: usize) -> f64 {
    let d = d - d.round(); // reduce mod 1 into [-1/2, 1/2]
    let denom = (PI * d).sin();
    if denom.abs() < 1e-12 {
        return 1.0;
    }
    let num = (PI * t_points as f64 * d).sin();
    let v = num / (t_points as f64 * denom);
    v * v
}

fn qcount_closed_form_sample<R: Rng>(
    oracle: &mut CountingOracle,
    t_budget: u64,
    rng: &mut R,
) -> u64 {
    let n = oracle.arity() as u64;
    let t = oracle.sim_weight();
    oracle.note_quantum_queries(t_budget.saturating_sub(1));
    sample_outcome(t, n, t_budget, rng)
}

/// Draws y from the closed-form distribution by expanding outward from the
/// kernel peak, so a sample touches O(log T) terms on average.
pub fn sample_outcome<R: Rng>(t: u64, n: u64, t_budget: u64, rng: &mut R) -> u64 {
    let t_points = t_budget as i64;
    if t_points == 1 {
        return 0;
    }
    if t == 0 {
        return 0;
    }
    if t == n {
        return t_budget / 2;
    }
    let theta = (t as f64 / n as f64).sqrt().asin();
    // Pick the eigenphase branch, then walk outward from its peak.
    let omega = if rng.random::<bool>() {
        theta / PI
    } else {
        1.0 - theta / PI
    };
    let center = (omega * t_points as f64).round() as i64;
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last_positive = center.rem_euclid(t_points) as u64;
    // Offsets 0, +1, -1, ..., +T/2: each of the T outcomes visited once
    // (the antipode +T/2 coincides with -T/2 and is taken once).
    let half = t_points / 2;
    for d in 0..=half {
        let signs: &[i64] = if d == 0 || d == half { &[1] } else { &[1, -1] };
        for &sign in signs {
            let y = (center + sign * d).rem_euclid(t_points) as u64;
            let frac = y as f64 / t_points as f64;
            let p = fejer(omega - frac, t_points as usize);
            acc += p;
            if p > 0.0 {
                last_positive = y;
            }
            if u < acc {
                return y;
            }
        }
    }
    last_positive
}

/// Outcome distribution extracted from the dense circuit, used by the
/// cross-validation suite.
pub fn qcount_circuit_distribution(x: &BitInput, t_budget: u64) -> Vec<f64> {
    let mut oracle = CountingOracle::new_bit(x.clone());
    let phase_bits = t_budget.trailing_zeros() as usize;
    if phase_bits == 0 {
        return vec![1.0];
    }
    let index_bits = x.len().trailing_zeros() as usize;
    let index = Register::new(0, index_bits);
    let phase = Register::new(index_bits, phase_bits);
    let mut state = QuantumState::new(index_bits + phase_bits).expect("within cap");
    state.hadamard(index).expect("valid register");
    state.hadamard(phase).expect("valid register");
    for j in 0..phase_bits {
        state
            .controlled_grover(&mut oracle, index_bits + j, index, 1 << j)
            .expect("widths match");
    }
    state.inverse_qft(phase).expect("valid register");
    state.register_distribution(phase).expect("valid register")
}
