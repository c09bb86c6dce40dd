//! Majority by staged quantum counting, and the classical sampling
//! baseline used by the lower-bound experiment.
//!
//! Stage i counts |X| with a budget of stage_c * 2^i * log2(N) queries
//! (rounded up to a power of two for the phase register) and stops as soon
//! as the estimate clears the shrinking band |t~ - N/2| > N/2^i; after the
//! last stage the input is counted classically. Each stage estimate is a
//! median of repeated counting runs, driving the per-stage failure rate
//! below 1/(10 log2 N).

use super::qcount::{qcount, QcountError, QcountMode};
use crate::oracle::CountingOracle;
use rand::Rng;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorityParams {
    /// Stage budget multiplier.
    pub stage_c: u64,
    /// Accuracy parameter handed to each counting run.
    pub count_k: u64,
    /// Median repetitions per stage; None derives ceil(log2(10 log2 N)).
    pub reps: Option<u32>,
}

impl Default for MajorityParams {
    fn default() -> Self {
        MajorityParams {
            stage_c: 100,
            count_k: 2,
            reps: None,
        }
    }
}

pub fn default_reps(n: usize) -> u32 {
    let log_n = (n as f64).log2();
    (10.0 * log_n).log2().ceil().max(1.0) as u32
}

fn stage_budget(params: &MajorityParams, i: u32, log_n: u32) -> u64 {
    (params.stage_c * (1u64 << i) * log_n as u64).next_power_of_two()
}

pub fn majority_avg<R: Rng>(
    oracle: &mut CountingOracle,
    rng: &mut R,
    params: &MajorityParams,
) -> Result<u8, QcountError> {
    let n = oracle.arity();
    if !n.is_power_of_two() {
        return Err(QcountError::SizeNotPowerOfTwo(n));
    }
    let log_n = n.trailing_zeros();
    let reps = params.reps.unwrap_or_else(|| default_reps(n));
    let half = n as f64 / 2.0;
    for i in 1..=log_n {
        let budget = stage_budget(params, i, log_n);
        let mut estimates = Vec::with_capacity(reps as usize);
        for _ in 0..reps {
            estimates.push(qcount(oracle, budget, params.count_k, rng, QcountMode::Auto)?);
        }
        let est = median(&mut estimates);
        if (est - half).abs() > n as f64 / (1u64 << i) as f64 {
            return Ok(u8::from(est > half));
        }
    }
    // Classical fallback: count everything.
    let mut t = 0u64;
    for pos in 0..n {
        t += oracle.query_bit(pos).expect("in range") as u64;
    }
    Ok(u8::from(2 * t > n as u64))
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

pub fn majority_query_cap(n: usize, params: &MajorityParams) -> u64 {
    let log_n = n.trailing_zeros();
    let reps = params.reps.unwrap_or_else(|| default_reps(n)) as u64;
    let mut total = 0u64;
    for i in 1..=log_n {
        total += reps * (stage_budget(params, i, log_n) - 1);
    }
    total + n as u64
}

/// Classical baseline for the lower-bound experiment: samples
/// `sample_size` positions without replacement and reports majority iff
/// the observed count reaches floor(T * (1/2 + 1/sqrt(N))).
pub fn classical_majority_sampler<R: Rng>(
    oracle: &mut CountingOracle,
    sample_size: u64,
    rng: &mut R,
) -> u8 {
    let n = oracle.arity();
    assert!(sample_size <= n as u64);
    let mut moved: HashMap<usize, usize> = HashMap::new();
    let mut ones = 0u64;
    for step in 0..sample_size as usize {
        let j = rng.random_range(step..n);
        let pick = *moved.get(&j).unwrap_or(&j);
        let at_step = *moved.get(&step).unwrap_or(&step);
        moved.insert(j, at_step);
        ones += oracle.query_bit(pick).expect("in range") as u64;
    }
    let cut = (sample_size as f64 * (0.5 + 1.0 / (n as f64).sqrt())).floor() as u64;
    u8::from(ones >= cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::random_input_with_weight;
    use crate::numeric::hypergeometric_tail_at_least;
    use crate::oracle::BitInput;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn all_ones_stops_early_with_output_one() {
        let n = 16usize;
        let mut x = BitInput::zeros(n);
        for i in 0..n {
            x.set_bit(i, 1);
        }
        let params = MajorityParams::default();
        for seed in 0..5 {
            let mut oracle = CountingOracle::new_bit(x.clone());
            let out = majority_avg(&mut oracle, &mut rng(seed), &params).unwrap();
            assert_eq!(out, 1);
            // Stops at stage 2 (the stage-1 band cannot be cleared), well
            // before the classical fallback.
            let reps = default_reps(n) as u64;
            let spent = oracle.total_queries();
            let two_stages = reps * ((stage_budget(&params, 1, 4) - 1)
                + (stage_budget(&params, 2, 4) - 1));
            assert_eq!(spent, two_stages);
        }
    }

    #[test]
    fn exact_tie_falls_through_to_classical_count() {
        let n = 16usize;
        let x = random_input_with_weight(n, 8, &mut rng(3));
        let params = MajorityParams::default();
        let mut oracle = CountingOracle::new_bit(x);
        let out = majority_avg(&mut oracle, &mut rng(4), &params).unwrap();
        assert_eq!(out, 0); // strict majority at a tie is 0
        assert_eq!(oracle.total_queries(), majority_query_cap(n, &params));
    }

    #[test]
    fn bounded_error_on_random_inputs() {
        let n = 16usize;
        let params = MajorityParams::default();
        let mut r = rng(7);
        let trials = 250;
        let mut wrong = 0u64;
        for _ in 0..trials {
            let x = crate::dist::random_bits(n, &mut r);
            let truth = u8::from(2 * x.weight() > n as u64);
            let mut oracle = CountingOracle::new_bit(x);
            let out = majority_avg(&mut oracle, &mut r, &params).unwrap();
            wrong += u64::from(out != truth);
        }
        assert!(
            (wrong as f64 / trials as f64) < 1.0 / 3.0,
            "error rate {}",
            wrong as f64 / trials as f64
        );
    }

    #[test]
    fn sampler_with_full_information_is_exact() {
        let n = 1024usize;
        for t in [n as u64 / 2, n as u64 / 2 + 32] {
            let x = random_input_with_weight(n, t, &mut rng(11 + t));
            let mut oracle = CountingOracle::new_bit(x);
            let out = classical_majority_sampler(&mut oracle, n as u64, &mut rng(13));
            // cut = floor(N(1/2 + 1/32)) = 544; exact count decides.
            assert_eq!(out, u8::from(t >= 544));
            assert_eq!(oracle.classical_queries(), n as u64);
        }
    }

    #[test]
    fn sampler_error_rates_match_the_hypergeometric_tail() {
        // At T = N/10 the sampler keeps a constant error on both critical
        // weights; the exact tails are 0.301015 and 0.442205.
        let n = 1024u64;
        let draws = n / 10; // 102
        let cut = (draws as f64 * (0.5 + 1.0 / (n as f64).sqrt())).floor() as u64;
        assert_eq!(cut, 54);
        let p_err_mid = hypergeometric_tail_at_least(n, n / 2, draws, cut);
        let p_err_high = 1.0 - hypergeometric_tail_at_least(n, n / 2 + 32, draws, cut);
        assert!((p_err_mid - 0.301015).abs() < 1e-5, "{p_err_mid}");
        assert!((p_err_high - 0.442205).abs() < 1e-5, "{p_err_high}");

        let trials = 20_000;
        let mut r = rng(17);
        for (t, expect, output_is_error) in
            [(n / 2, p_err_mid, 1u8), (n / 2 + 32, p_err_high, 0u8)]
        {
            let mut errs = 0u64;
            for _ in 0..trials {
                let x = random_input_with_weight(n as usize, t, &mut r);
                let mut oracle = CountingOracle::new_bit(x);
                let out = classical_majority_sampler(&mut oracle, draws, &mut r);
                errs += u64::from(out == output_is_error);
            }
            let rate = errs as f64 / trials as f64;
            let sigma = (expect * (1.0 - expect) / trials as f64).sqrt();
            assert!(
                (rate - expect).abs() < 4.0 * sigma,
                "t={t}: rate {rate} vs exact {expect}"
            );
            assert!(rate > 0.25 && rate < 0.5, "t={t}: rate {rate}");
        }
    }
}
