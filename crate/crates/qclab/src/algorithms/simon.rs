//! Zero-error decision of the total hidden-period function.
//!
//! Each quantum round prepares the index/value superposition with one
//! block query, measures the value register, transforms the collapsed
//! index register, and measures it; the sampled vectors are always
//! orthogonal to any period. After a fixed number of rounds the collected
//! span either certifies value 0 or the algorithm falls back to reading
//! every block classically, so the output is always correct.

use super::gf2::SpanTracker;
use crate::oracle::CountingOracle;
use crate::qsim::{QuantumState, Register};
use rand::Rng;

/// Rounds per hidden-period width: m = rounds_per_n * n.
pub const DEFAULT_ROUNDS_PER_N: u64 = 22;

/// One quantum round; returns the measured index-register vector and
/// charges exactly one block query.
///
/// The value-register measurement is sampled from its exact Born
/// distribution (preimage size over 2^n) and the collapsed index register
/// is then carried through the Hadamard transform as an n-qubit state.
/// This matches the two-register circuit branch for branch; the circuit
/// route below exists to cross-check exactly that.
pub fn simon_round<R: Rng>(oracle: &mut CountingOracle, rng: &mut R) -> u64 {
    let n = oracle.block_width().expect("block oracle");
    let size = 1usize << n;
    // Born weights of the value measurement: |preimage of j| / 2^n.
    let blocks: Vec<u64> = (0..size).map(|i| oracle.sim_block(i)).collect();
    oracle.note_quantum_queries(1);
    let pick = rng.random_range(0..size);
    let j = blocks[pick]; // index picked uniformly <=> value j with weight |S_j|/2^n
    let preimage: Vec<usize> = (0..size).filter(|&i| blocks[i] == j).collect();

    // Collapsed index register: uniform superposition over the preimage.
    let mut state = QuantumState::new(n).expect("within cap");
    let amp = 1.0 / (preimage.len() as f64).sqrt();
    let mut amps = vec![num_complex::Complex64::ZERO; size];
    for &i in &preimage {
        amps[i] = num_complex::Complex64::new(amp, 0.0);
    }
    state.load_amplitudes(&amps);
    let reg = Register::new(0, n);
    state.hadamard(reg).expect("valid register");
    state.measure(reg, rng).expect("normalised state")
}

/// The same round through the full two-register circuit.
pub fn simon_round_circuit<R: Rng>(oracle: &mut CountingOracle, rng: &mut R) -> u64 {
    let n = oracle.block_width().expect("block oracle");
    let index = Register::new(0, n);
    let value = Register::new(n, n);
    let mut state = QuantumState::new(2 * n).expect("within cap");
    state.hadamard(index).expect("valid register");
    state
        .apply_xor_query(oracle, index, value)
        .expect("widths match");
    state.measure(value, rng).expect("normalised state");
    state.hadamard(index).expect("valid register");
    state.measure(index, rng).expect("normalised state")
}

/// Zero-error decision procedure; `rounds_per_n` defaults to 22.
pub fn simon_zero_error<R: Rng>(
    oracle: &mut CountingOracle,
    rng: &mut R,
    rounds_per_n: u64,
) -> u8 {
    let n = oracle.block_width().expect("block oracle");
    let m = rounds_per_n * n as u64;
    let mut span = SpanTracker::new(n);
    for _ in 0..m {
        span.add(simon_round(oracle, rng));
    }
    if span.is_full() {
        // Only k = 0 is orthogonal to everything: no hidden period.
        return 0;
    }
    // Read the whole table and decide exactly.
    let size = 1usize << n;
    let blocks: Vec<u64> = (0..size)
        .map(|i| oracle.query_block(i).expect("in range"))
        .collect();
    u8::from(!crate::oracle::simon_periods(&blocks).is_empty())
}

/// Whether the first phase alone already certifies a 0 answer.
pub fn simon_first_phase_decides<R: Rng>(
    oracle: &mut CountingOracle,
    rng: &mut R,
    rounds_per_n: u64,
) -> bool {
    let n = oracle.block_width().expect("block oracle");
    let m = rounds_per_n * n as u64;
    let mut span = SpanTracker::new(n);
    for _ in 0..m {
        span.add(simon_round(oracle, rng));
    }
    span.is_full()
}

pub fn simon_query_cap(n: usize, rounds_per_n: u64) -> u64 {
    rounds_per_n * n as u64 + (1u64 << n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::InputDistribution;
    use crate::oracle::{simon_unique_period, simon_value, BitInput};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    fn inner_product_parity(a: u64, b: u64) -> u32 {
        (a & b).count_ones() % 2
    }

    #[test]
    fn rounds_are_orthogonal_to_the_period_exhaustively_at_n2() {
        // Over the entire unique-period support, every sampled vector is
        // orthogonal to the period.
        let support = crate::dist::simon_d2_support(2);
        let mut r = rng(1);
        for x in support {
            let blocks: Vec<u64> = (0..4).map(|i| x.block(i)).collect();
            let k = simon_unique_period(&blocks).unwrap();
            for _ in 0..50 {
                let mut oracle = CountingOracle::new_block(x.clone()).unwrap();
                let i_prime = simon_round(&mut oracle, &mut r);
                assert_eq!(inner_product_parity(k, i_prime), 0);
                assert_eq!(oracle.quantum_queries(), 1);
            }
        }
    }

    #[test]
    fn rounds_are_orthogonal_to_the_period_sampled_at_n3_n4() {
        for (n, trials) in [(3usize, 10_000u32), (4, 10_000)] {
            let d = InputDistribution::simon_d2(n);
            let mut r = rng(n as u64);
            for _ in 0..trials / 50 {
                let x = d.sample(&mut r);
                let blocks: Vec<u64> = (0..1 << n).map(|i| x.block(i)).collect();
                let k = crate::oracle::simon_periods(&blocks)[0];
                for _ in 0..50 {
                    let mut oracle = CountingOracle::new_block(x.clone()).unwrap();
                    let i_prime = simon_round(&mut oracle, &mut r);
                    assert_eq!(inner_product_parity(k, i_prime), 0);
                }
            }
        }
    }

    #[test]
    fn final_state_amplitudes_vanish_off_the_orthogonal_subspace() {
        // On every unique-period input at n=2 and every value branch, the
        // transformed index register carries zero amplitude (to machine
        // epsilon) on vectors not orthogonal to the period: the
        // (1 + (-1)^(k, i')) interference factor.
        let n = 2;
        let index = Register::new(0, n);
        let value = Register::new(n, n);
        for x in crate::dist::simon_d2_support(n) {
            let blocks: Vec<u64> = (0..1 << n).map(|i| x.block(i)).collect();
            let k = simon_unique_period(&blocks).unwrap();
            for j in 0..(1u64 << n) {
                let branch_size = blocks.iter().filter(|&&v| v == j).count();
                if branch_size == 0 {
                    continue;
                }
                let mut oracle = CountingOracle::new_block(x.clone()).unwrap();
                let mut state = QuantumState::new(2 * n).unwrap();
                state.hadamard(index).unwrap();
                state.apply_xor_query(&mut oracle, index, value).unwrap();
                let p_j = branch_size as f64 / (1 << n) as f64;
                state.collapse(value, j, p_j).unwrap();
                state.hadamard(index).unwrap();
                for (b, amp) in state.amplitudes().iter().enumerate() {
                    let i_prime = index.extract(b);
                    if inner_product_parity(k, i_prime) == 1 {
                        assert!(
                            amp.norm() < 1e-12,
                            "nonzero amplitude {amp} at i'={i_prime} with k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fast_round_matches_circuit_round_distribution() {
        // Compare measured-index frequencies between the two round
        // implementations on a fixed input with a nontrivial preimage
        // structure.
        let x = BitInput::from_blocks(2, &[0, 0, 1, 2]);
        let trials = 40_000;
        let mut counts_fast = [0u64; 4];
        let mut counts_circuit = [0u64; 4];
        let mut r = rng(23);
        for _ in 0..trials {
            let mut o1 = CountingOracle::new_block(x.clone()).unwrap();
            counts_fast[simon_round(&mut o1, &mut r) as usize] += 1;
            let mut o2 = CountingOracle::new_block(x.clone()).unwrap();
            counts_circuit[simon_round_circuit(&mut o2, &mut r) as usize] += 1;
        }
        for v in 0..4 {
            let f1 = counts_fast[v] as f64 / trials as f64;
            let f2 = counts_circuit[v] as f64 / trials as f64;
            assert!(
                (f1 - f2).abs() < 0.015,
                "index {v}: fast {f1} vs circuit {f2}"
            );
        }
    }

    #[test]
    fn one_inputs_always_fall_through_and_answer_one() {
        // Any input with a period keeps the span in a proper subspace, so
        // the cost is exactly m + 2^n block queries and the answer is 1.
        let d = InputDistribution::simon_d2(3);
        let mut r = rng(31);
        for _ in 0..25 {
            let x = d.sample(&mut r);
            let mut oracle = CountingOracle::new_block(x).unwrap();
            let out = simon_zero_error(&mut oracle, &mut r, DEFAULT_ROUNDS_PER_N);
            assert_eq!(out, 1);
            assert_eq!(oracle.total_queries(), 22 * 3 + 8);
        }
    }

    #[test]
    fn zero_error_on_uniform_inputs_n3() {
        let d = InputDistribution::simon_d1(3);
        let mut r = rng(37);
        for _ in 0..300 {
            let x = d.sample(&mut r);
            let truth = simon_value(&x).unwrap();
            let mut oracle = CountingOracle::new_block(x).unwrap();
            let out = simon_zero_error(&mut oracle, &mut r, DEFAULT_ROUNDS_PER_N);
            assert_eq!(out, truth);
            assert!(oracle.total_queries() <= simon_query_cap(3, 22));
        }
    }

    #[test]
    fn distinct_blocks_usually_resolve_in_phase_one() {
        // All-distinct blocks at n=2: the span reaches full rank with
        // probability well above 1 - 2^-n.
        let x = BitInput::from_blocks(2, &[0, 1, 2, 3]);
        let mut r = rng(41);
        let trials = 2000;
        let mut decided = 0;
        for _ in 0..trials {
            let mut oracle = CountingOracle::new_block(x.clone()).unwrap();
            decided += u64::from(simon_first_phase_decides(&mut oracle, &mut r, 22));
        }
        let rate = decided as f64 / trials as f64;
        assert!(rate >= 1.0 - 0.25, "first-phase rate {rate}");
    }
}
