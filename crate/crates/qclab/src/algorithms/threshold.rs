//! Adaptive sampler for the threshold function f(X) = [|X| >= theta*N].
//!
//! Batches of uniformly random positions (with replacement) grow linearly
//! in the round index; an observed 1-fraction of at least 2/10 ends the
//! run with output 1, and once the round index reaches log2(N) the input
//! is counted exactly.

use crate::oracle::CountingOracle;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdParams {
    /// Threshold fraction of the target function, as an exact rational.
    pub theta: (u64, u64),
    /// Bits sampled in round i: batch_scale * i.
    pub batch_scale: u64,
    /// First round index.
    pub start_i: u64,
}

impl Default for ThresholdParams {
    fn default() -> Self {
        ThresholdParams {
            theta: (1, 10),
            batch_scale: 8,
            start_i: 1,
        }
    }
}

/// The early-exit fraction is fixed at 2/10; it certifies inputs whose true
/// fraction is at least 3/10, which the threshold 1/10 inputs concentrate
/// above under any weight-heavy distribution.
pub const EARLY_EXIT_NUM: u64 = 2;
pub const EARLY_EXIT_DEN: u64 = 10;

pub fn threshold_sampler<R: Rng>(
    oracle: &mut CountingOracle,
    rng: &mut R,
    params: &ThresholdParams,
) -> u8 {
    let n = oracle.arity();
    let log_n = (n as f64).log2();
    let mut i = params.start_i;
    while (i as f64) < log_n {
        let batch = params.batch_scale * i;
        let mut ones = 0u64;
        for _ in 0..batch {
            let pos = rng.random_range(0..n);
            ones += oracle.query_bit(pos).expect("in range") as u64;
        }
        // ones/batch >= 2/10, compared in integers.
        if ones * EARLY_EXIT_DEN >= EARLY_EXIT_NUM * batch {
            return 1;
        }
        i += 1;
    }
    // Exact count with N further queries.
    let mut t = 0u64;
    for pos in 0..n {
        t += oracle.query_bit(pos).expect("in range") as u64;
    }
    let (num, den) = params.theta;
    u8::from(t * den >= num * n as u64)
}

/// Structural upper bound on the sampler's query count.
pub fn threshold_query_cap(n: usize, params: &ThresholdParams) -> u64 {
    let rounds = (n as f64).log2().ceil() as u64 + 1;
    let mut total = 0;
    for i in params.start_i..params.start_i + rounds {
        total += params.batch_scale * i;
    }
    total + n as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::BitInput;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn all_ones_stops_in_the_first_round() {
        let n = 256;
        let mut x = BitInput::zeros(n);
        for i in 0..n {
            x.set_bit(i, 1);
        }
        let params = ThresholdParams::default();
        for seed in 0..20 {
            let mut oracle = CountingOracle::new_bit(x.clone());
            let out = threshold_sampler(&mut oracle, &mut rng(seed), &params);
            assert_eq!(out, 1);
            assert_eq!(oracle.classical_queries(), params.batch_scale * params.start_i);
        }
    }

    #[test]
    fn all_zeros_falls_through_to_an_exact_count() {
        let n = 256usize;
        let params = ThresholdParams::default();
        for seed in 0..20 {
            let mut oracle = CountingOracle::new_bit(BitInput::zeros(n));
            let out = threshold_sampler(&mut oracle, &mut rng(seed), &params);
            assert_eq!(out, 0);
            // Every batch fails, then exactly N more queries.
            let batch_total: u64 = (1..8).map(|i| 8 * i).sum(); // rounds 1..log2(256)
            assert_eq!(oracle.classical_queries(), batch_total + n as u64);
        }
    }

    #[test]
    fn mean_queries_stay_constant_across_sizes() {
        // Uniform inputs keep the 1-fraction near 1/2, so round one almost
        // always fires; the mean is bounded by a small constant at any N.
        let params = ThresholdParams::default();
        for exp in [8u32, 10, 12] {
            let n = 1usize << exp;
            let mut r = rng(42 + exp as u64);
            let trials = 400;
            let mut total = 0u64;
            for _ in 0..trials {
                let x = crate::dist::random_bits(n, &mut r);
                let mut oracle = CountingOracle::new_bit(x);
                threshold_sampler(&mut oracle, &mut r, &params);
                total += oracle.classical_queries();
            }
            let mean = total as f64 / trials as f64;
            assert!(mean <= 30.0, "N=2^{exp} mean {mean}");
        }
    }

    #[test]
    fn query_cap_holds() {
        let params = ThresholdParams::default();
        for seed in 0..10 {
            let n = 64;
            let x = crate::dist::random_bits(n, &mut rng(seed));
            let mut oracle = CountingOracle::new_bit(x);
            threshold_sampler(&mut oracle, &mut rng(seed + 100), &params);
            assert!(oracle.total_queries() <= threshold_query_cap(n, &params));
        }
    }
}
