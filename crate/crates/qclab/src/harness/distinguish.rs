//! Acceptance-rate gap between the uniform and unique-period input
//! distributions for a transcript-based classical decider.
//!
//! The decider queries m uniformly random distinct blocks and counts
//! equal-answer pairs; it reports "uniform" when the count stays at or
//! below the midpoint between the two distributions' expected counts.
//! With m far below 2^(n/2) the transcripts are nearly identically
//! distributed and the gap collapses; near 2^(n/2) the birthday collisions
//! separate the distributions.

use super::seeds;
use crate::dist::{sample_simon_d2_with_period, InputDistribution};
use crate::oracle::CountingOracle;
use rand::Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy)]
pub struct DistinguishOutcome {
    pub n: usize,
    pub m: usize,
    pub trials: u32,
    /// Collision-count threshold the decider compares against.
    pub threshold: f64,
    pub p_uniform_verdict_on_d1: f64,
    pub p_uniform_verdict_on_d2: f64,
    /// p_uniform_verdict_on_d1 - p_uniform_verdict_on_d2.
    pub gap: f64,
}

/// Midpoint between the expected equal-pair counts under the uniform and
/// unique-period distributions: C(m,2)/2^n + C(m,2)/(2 (2^n - 1)).
pub fn collision_threshold(n: usize, m: usize) -> f64 {
    let pairs = (m * (m - 1)) as f64 / 2.0;
    pairs / (1u64 << n) as f64 + pairs / (2.0 * ((1u64 << n) - 1) as f64)
}

/// The wrapped decider: queries `m` distinct blocks through the counting
/// oracle (at most 10 m queries, trivially honoured) and outputs 1 when
/// the equal-pair count exceeds the threshold.
pub fn transcript_decider<R: Rng>(
    oracle: &mut CountingOracle,
    m: usize,
    threshold: f64,
    rng: &mut R,
) -> u8 {
    let domain = oracle.block_count().expect("block oracle");
    debug_assert!(m <= domain);
    let mut picked: Vec<usize> = Vec::with_capacity(m);
    let mut answers: Vec<u64> = Vec::with_capacity(m);
    while picked.len() < m {
        let i = rng.random_range(0..domain);
        if picked.contains(&i) {
            continue;
        }
        picked.push(i);
        answers.push(oracle.query_block(i).expect("in range"));
    }
    let mut collisions = 0u64;
    for (a, v) in answers.iter().enumerate() {
        collisions += answers[..a].iter().filter(|&w| w == v).count() as u64;
    }
    u8::from(collisions as f64 > threshold)
}

/// Measures the decider's verdict rates on both distributions.
pub fn distinguishing_experiment(
    n: usize,
    m: usize,
    trials: u32,
    seed: u64,
) -> DistinguishOutcome {
    assert!(m >= 1 && m <= 1 << n);
    let threshold = collision_threshold(n, m);
    let d1 = InputDistribution::simon_d1(n);
    let base = seeds::tag("distinguish");
    let verdicts: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = seeds::rng_for(seed, &[base, trial as u64]);
            let x1 = d1.sample(&mut rng);
            let mut o1 = CountingOracle::new_block(x1).expect("layout set");
            let v1 = transcript_decider(&mut o1, m, threshold, &mut rng) == 0;
            let (x2, _, _) = sample_simon_d2_with_period(n, &mut rng);
            let mut o2 = CountingOracle::new_block(x2).expect("layout set");
            let v2 = transcript_decider(&mut o2, m, threshold, &mut rng) == 0;
            (v1, v2)
        })
        .collect();
    let t = trials as f64;
    let p1 = verdicts.iter().filter(|v| v.0).count() as f64 / t;
    let p2 = verdicts.iter().filter(|v| v.1).count() as f64 / t;
    DistinguishOutcome {
        n,
        m,
        trials,
        threshold,
        p_uniform_verdict_on_d1: p1,
        p_uniform_verdict_on_d2: p2,
        gap: p1 - p2,
    }
}

/// Degenerate full-information check: with m = 2^n the decider sees the
/// whole table.
pub fn full_information_gap(n: usize, trials: u32, seed: u64) -> f64 {
    distinguishing_experiment(n, 1 << n, trials, seed).gap
}
