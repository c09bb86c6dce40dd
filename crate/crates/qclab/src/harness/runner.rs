//! Single runs and distribution-weighted aggregation.

use super::records::{CertReport, EstimateMode, RunRecord, SummaryStats};
use super::seeds;
use super::HarnessError;
use crate::algorithms::Algorithm;
use crate::dist::InputDistribution;
use crate::oracle::{BitInput, BooleanFunction, CountingOracle, QueryUnit};
use rayon::prelude::*;
use std::time::Instant;

/// A fully specified measurement target.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub algorithm: Algorithm,
    pub function: BooleanFunction,
    pub distribution: InputDistribution,
}

impl Experiment {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.function.arity() != self.distribution.arity() {
            return Err(HarnessError::Mismatch(format!(
                "function arity {} vs distribution arity {}",
                self.function.arity(),
                self.distribution.arity()
            )));
        }
        if self.algorithm.unit() == QueryUnit::Block && self.distribution.block_width().is_none() {
            return Err(HarnessError::Mismatch(format!(
                "{} queries blocks but the distribution carries no block layout",
                self.algorithm.name()
            )));
        }
        Ok(())
    }
}

/// How to spend the estimation budget.
#[derive(Debug, Clone, Copy)]
pub enum Budget {
    /// One sampled input and one realized run per trial; unbiased for the
    /// distribution-weighted expected query count.
    MonteCarlo { trials: u64 },
    /// Enumerate the support and estimate each per-input expectation with
    /// `inner_reps` repetitions, then combine with exact probabilities.
    Exact { inner_reps: u64 },
}

/// Runaway guard: a run exceeding max(50 N, 2 * structural cap) queries is
/// recorded as incorrect. The paper-shaped algorithms sit far below it.
fn runaway_cap(algo: &Algorithm, arity: usize) -> u64 {
    (50 * arity as u64).max(2 * algo.query_cap(arity))
}

fn make_oracle(algo: &Algorithm, x: BitInput) -> Result<CountingOracle, HarnessError> {
    Ok(match algo.unit() {
        QueryUnit::Bit => CountingOracle::new_bit(x),
        QueryUnit::Block => CountingOracle::new_block(x).map_err(crate::algorithms::AlgoError::from)?,
    })
}

fn input_label(x: &BitInput) -> String {
    if x.len() <= 64 {
        format!("{}:{}", x.len(), x.to_hex())
    } else {
        format!("digest:{:016x}", x.digest())
    }
}

/// Runs the algorithm once against `x` with a caller-provided stream.
pub fn run_once<R: rand::Rng>(
    exp: &Experiment,
    x: &BitInput,
    seed: u64,
    rng: &mut R,
) -> Result<RunRecord, HarnessError> {
    let started = Instant::now();
    let mut oracle = make_oracle(&exp.algorithm, x.clone())?;
    let output = exp.algorithm.run(&mut oracle, rng)?;
    let truth = exp
        .function
        .evaluate(x)
        .map_err(crate::algorithms::AlgoError::from)?;
    let total = oracle.total_queries();
    let overran = total > runaway_cap(&exp.algorithm, x.len());
    let (bit_queries, block_queries) = match oracle.unit() {
        QueryUnit::Bit => (total, 0),
        QueryUnit::Block => (0, total),
    };
    Ok(RunRecord {
        algorithm: exp.algorithm.name().into(),
        tunables: exp.algorithm.tunables(),
        function: exp.function.name(),
        distribution: exp.distribution.name(),
        input: input_label(x),
        seed,
        output,
        correct: output == truth && !overran,
        bit_queries,
        block_queries,
        wall_time_s: started.elapsed().as_secs_f64(),
    })
}

/// Queries charged in the algorithm's own unit.
fn unit_queries(rec: &RunRecord) -> u64 {
    rec.bit_queries + rec.block_queries
}

/// Estimates the distribution-weighted expected query count.
pub fn avg_complexity(
    exp: &Experiment,
    budget: Budget,
    seed: u64,
) -> Result<SummaryStats, HarnessError> {
    exp.validate()?;
    let exp_tag = seeds::tag(exp.algorithm.name());
    match budget {
        Budget::MonteCarlo { trials } => {
            let results: Result<Vec<(u64, bool)>, HarnessError> = (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let mut rng = seeds::rng_for(seed, &[exp_tag, trial]);
                    let x = exp.distribution.sample(&mut rng);
                    let rec = run_once(exp, &x, seed, &mut rng)?;
                    Ok((unit_queries(&rec), rec.correct))
                })
                .collect();
            let results = results?;
            let n = results.len() as f64;
            let mean = results.iter().map(|r| r.0 as f64).sum::<f64>() / n;
            let var = results
                .iter()
                .map(|r| (r.0 as f64 - mean).powi(2))
                .sum::<f64>()
                / (n - 1.0).max(1.0);
            let success = results.iter().filter(|r| r.1).count() as f64 / n;
            Ok(SummaryStats {
                mean_queries: mean,
                std_error: (var / n).sqrt(),
                min_success_rate: success,
                trials,
                mode: EstimateMode::MonteCarlo,
            })
        }
        Budget::Exact { inner_reps } => {
            let inner_reps = inner_reps.max(100);
            let support = exp.distribution.support_enumerate(1 << 20)?;
            let per_point: Result<Vec<(f64, f64, f64)>, HarnessError> = support
                .par_iter()
                .enumerate()
                .map(|(idx, (x, p))| {
                    let mut mean = 0.0;
                    let mut m2 = 0.0;
                    let mut successes = 0u64;
                    for rep in 0..inner_reps {
                        let mut rng = seeds::rng_for(seed, &[exp_tag, idx as u64, rep]);
                        let rec = run_once(exp, x, seed, &mut rng)?;
                        let q = unit_queries(&rec) as f64;
                        let delta = q - mean;
                        mean += delta / (rep + 1) as f64;
                        m2 += delta * (q - mean);
                        successes += rec.correct as u64;
                    }
                    let var = m2 / (inner_reps.saturating_sub(1)).max(1) as f64;
                    let rate = successes as f64 / inner_reps as f64;
                    Ok((p * mean, p * p * var / inner_reps as f64, rate))
                })
                .collect();
            let per_point = per_point?;
            let mean = per_point.iter().map(|r| r.0).sum();
            let var: f64 = per_point.iter().map(|r| r.1).sum();
            let min_rate = per_point.iter().map(|r| r.2).fold(1.0f64, f64::min);
            Ok(SummaryStats {
                mean_queries: mean,
                std_error: var.sqrt(),
                min_success_rate: min_rate,
                trials: support.len() as u64 * inner_reps,
                mode: EstimateMode::ExactEnumeration,
            })
        }
    }
}

/// Which inputs a certification covers.
#[derive(Debug, Clone)]
pub enum CertScope {
    /// Every input of the function's arity (arity <= 10).
    Exhaustive,
    /// `count` inputs sampled from the experiment's distribution.
    Sampled { count: u64 },
}

/// Estimates per-input success rates. Bounded-error algorithms pass when
/// the worst rate clears 2/3 minus three binomial sigmas; zero-error
/// algorithms must be perfect.
pub fn certify_bounded_error(
    exp: &Experiment,
    scope: CertScope,
    trials_per_input: u64,
    seed: u64,
) -> Result<CertReport, HarnessError> {
    exp.validate()?;
    let exp_tag = seeds::tag(exp.algorithm.name()).wrapping_add(1);
    let n = exp.function.arity();
    let inputs: Vec<BitInput> = match scope {
        CertScope::Exhaustive => {
            if n > 10 {
                return Err(HarnessError::Mismatch(format!(
                    "exhaustive certification is capped at 10 bits, got {n}"
                )));
            }
            (0u64..(1u64 << n))
                .map(|v| {
                    let x = BitInput::from_u64(n, v);
                    match exp.distribution.block_width() {
                        Some(w) => x.with_block_width(w).expect("layout divides arity"),
                        None => x,
                    }
                })
                .collect()
        }
        CertScope::Sampled { count } => {
            let mut rng = seeds::rng_for(seed, &[exp_tag, u64::MAX]);
            (0..count).map(|_| exp.distribution.sample(&mut rng)).collect()
        }
    };
    let rates: Result<Vec<(String, f64)>, HarnessError> = inputs
        .par_iter()
        .enumerate()
        .map(|(idx, x)| {
            let mut successes = 0u64;
            for rep in 0..trials_per_input {
                let mut rng = seeds::rng_for(seed, &[exp_tag, idx as u64, rep]);
                let rec = run_once(exp, x, seed, &mut rng)?;
                successes += rec.correct as u64;
            }
            Ok((input_label(x), successes as f64 / trials_per_input as f64))
        })
        .collect();
    let rates = rates?;
    let (worst_input, min_rate) = rates
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .map(|(s, r)| (s.clone(), *r))
        .expect("at least one input");
    let mean_rate = rates.iter().map(|r| r.1).sum::<f64>() / rates.len() as f64;
    let zero_error_violations = if exp.algorithm.zero_error() {
        rates.iter().filter(|r| r.1 < 1.0).count() as u64
    } else {
        0
    };
    let sigma = ((2.0 / 3.0) * (1.0 / 3.0) / trials_per_input as f64).sqrt();
    let pass = if exp.algorithm.zero_error() {
        zero_error_violations == 0
    } else {
        min_rate >= 2.0 / 3.0 - 3.0 * sigma
    };
    Ok(CertReport {
        inputs_tested: rates.len() as u64,
        trials_per_input,
        min_rate,
        mean_rate,
        worst_input,
        zero_error_violations,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{GroverParams, ThresholdParams};

    #[test]
    fn deterministic_baseline_has_zero_spread() {
        let f = BooleanFunction::maj(8);
        let exp = Experiment {
            algorithm: Algorithm::FullCount(f.clone()),
            function: f,
            distribution: InputDistribution::uniform(8),
        };
        let stats = avg_complexity(&exp, Budget::MonteCarlo { trials: 200 }, 5).unwrap();
        assert_eq!(stats.mean_queries, 8.0);
        assert_eq!(stats.std_error, 0.0);
        assert_eq!(stats.min_success_rate, 1.0);
    }

    #[test]
    fn simon_uniform_average_stays_under_the_bound() {
        // Mean block queries at n=4 under uniform inputs: at most 22n + 1.
        let exp = Experiment {
            algorithm: Algorithm::SimonZeroError { rounds_per_n: 22 },
            function: BooleanFunction::simon(4),
            distribution: InputDistribution::simon_d1(4),
        };
        let stats = avg_complexity(&exp, Budget::MonteCarlo { trials: 3000 }, 11).unwrap();
        assert!(
            stats.mean_queries <= 22.0 * 4.0 + 1.0,
            "mean {}",
            stats.mean_queries
        );
        assert_eq!(stats.min_success_rate, 1.0);
    }

    #[test]
    fn exact_and_monte_carlo_agree_within_three_sigma() {
        let exp = Experiment {
            algorithm: Algorithm::SimonZeroError { rounds_per_n: 22 },
            function: BooleanFunction::simon(2),
            distribution: InputDistribution::simon_d1(2),
        };
        let exact = avg_complexity(&exp, Budget::Exact { inner_reps: 100 }, 3).unwrap();
        let mc = avg_complexity(&exp, Budget::MonteCarlo { trials: 4000 }, 4).unwrap();
        let spread = (exact.std_error.powi(2) + mc.std_error.powi(2)).sqrt();
        assert!(
            (exact.mean_queries - mc.mean_queries).abs() <= 3.0 * spread.max(1e-9),
            "exact {} vs mc {}",
            exact.mean_queries,
            mc.mean_queries
        );
        assert_eq!(exact.mode, EstimateMode::ExactEnumeration);
    }

    #[test]
    fn mismatched_arities_are_rejected() {
        let exp = Experiment {
            algorithm: Algorithm::ClassicalOrSampler,
            function: BooleanFunction::or(8),
            distribution: InputDistribution::uniform(9),
        };
        assert!(matches!(
            avg_complexity(&exp, Budget::MonteCarlo { trials: 1 }, 0),
            Err(HarnessError::Mismatch(_))
        ));
    }

    #[test]
    fn certification_accepts_exact_parity_and_rejects_nothing_silently() {
        let f = BooleanFunction::parity(8);
        let exp = Experiment {
            algorithm: Algorithm::ParityExactQuantum,
            function: f,
            distribution: InputDistribution::uniform(8),
        };
        let report = certify_bounded_error(&exp, CertScope::Exhaustive, 50, 7).unwrap();
        assert_eq!(report.min_rate, 1.0);
        assert_eq!(report.zero_error_violations, 0);
        assert!(report.pass);
        assert_eq!(report.inputs_tested, 256);
    }

    #[test]
    fn certification_covers_threshold_exhaustively_at_n10() {
        let exp = Experiment {
            algorithm: Algorithm::ThresholdSampler(ThresholdParams::default()),
            function: BooleanFunction::threshold(10, 1, 10),
            distribution: InputDistribution::uniform(10),
        };
        let report = certify_bounded_error(&exp, CertScope::Exhaustive, 60, 9).unwrap();
        assert!(report.pass, "min rate {}", report.min_rate);
    }

    #[test]
    fn certification_samples_large_sizes() {
        let exp = Experiment {
            algorithm: Algorithm::GroverOr(GroverParams::default()),
            function: BooleanFunction::or(256),
            distribution: InputDistribution::uniform(256),
        };
        let report =
            certify_bounded_error(&exp, CertScope::Sampled { count: 50 }, 60, 13).unwrap();
        assert!(report.pass, "min rate {}", report.min_rate);
    }

    #[test]
    fn certification_covers_grover_exhaustively_at_n8() {
        // Every input, including the hard single-solution ones.
        let exp = Experiment {
            algorithm: Algorithm::GroverOr(GroverParams::default()),
            function: BooleanFunction::or(8),
            distribution: InputDistribution::uniform(8),
        };
        let report = certify_bounded_error(&exp, CertScope::Exhaustive, 800, 19).unwrap();
        assert!(report.pass, "min rate {}", report.min_rate);
    }

    #[test]
    fn reproducible_summaries() {
        let exp = Experiment {
            algorithm: Algorithm::ClassicalOrSampler,
            function: BooleanFunction::or(64),
            distribution: InputDistribution::or_alpha(64, 0.4).unwrap(),
        };
        let a = avg_complexity(&exp, Budget::MonteCarlo { trials: 500 }, 21).unwrap();
        let b = avg_complexity(&exp, Budget::MonteCarlo { trials: 500 }, 21).unwrap();
        assert_eq!(a.mean_queries, b.mean_queries);
        assert_eq!(a.std_error, b.std_error);
    }

    #[test]
    fn classical_or_mean_tracks_the_power_law_window() {
        // Power-law inputs at N = 2^10: the mean sits within
        // [0.3, 3] * N^0.4.
        let n = 1 << 10;
        let exp = Experiment {
            algorithm: Algorithm::ClassicalOrSampler,
            function: BooleanFunction::or(n),
            distribution: InputDistribution::or_alpha(n, 0.4).unwrap(),
        };
        let stats = avg_complexity(&exp, Budget::MonteCarlo { trials: 2500 }, 31).unwrap();
        let scale = (n as f64).powf(0.4);
        assert!(
            stats.mean_queries >= 0.3 * scale && stats.mean_queries <= 3.0 * scale,
            "mean {} outside [{}, {}]",
            stats.mean_queries,
            0.3 * scale,
            3.0 * scale
        );
    }

    #[test]
    fn certification_accepts_staged_majority_at_n8() {
        let exp = Experiment {
            algorithm: Algorithm::MajorityAvg(crate::algorithms::MajorityParams::default()),
            function: BooleanFunction::maj(8),
            distribution: InputDistribution::uniform(8),
        };
        let report = certify_bounded_error(&exp, CertScope::Exhaustive, 600, 17).unwrap();
        assert!(report.pass, "min rate {}", report.min_rate);
    }

    #[test]
    fn grover_vs_classical_or_satisfies_the_concavity_transfer() {
        // Per-input expected costs measured on sampled uniform inputs at
        // N = 256: the search cost stays below 3 sqrt(classical cost)
        // pointwise, and the transfer carries it to the averages.
        let n = 256usize;
        let f = BooleanFunction::or(n);
        let d = InputDistribution::uniform(n);
        let grover = Algorithm::GroverOr(crate::algorithms::GroverParams::default());
        let classical = Algorithm::ClassicalOrSampler;
        let mut rng = seeds::rng_for(23, &[77]);
        let inputs: Vec<_> = (0..25).map(|_| d.sample(&mut rng)).collect();
        let reps = 200u64;
        let mut points = Vec::new();
        for (idx, x) in inputs.iter().enumerate() {
            let mut totals = [0u64; 2];
            for (slot, algo) in [&grover, &classical].iter().enumerate() {
                for rep in 0..reps {
                    let mut r = seeds::rng_for(23, &[idx as u64, slot as u64, rep]);
                    let exp = Experiment {
                        algorithm: (*algo).clone(),
                        function: f.clone(),
                        distribution: d.clone(),
                    };
                    let rec = run_once(&exp, x, 23, &mut r).unwrap();
                    totals[slot] += rec.bit_queries + rec.block_queries;
                }
            }
            points.push((
                1.0 / inputs.len() as f64,
                totals[0] as f64 / reps as f64,
                totals[1] as f64 / reps as f64,
            ));
        }
        let report = crate::bounds::jensen_check(&points, |x| 3.0 * x.sqrt());
        assert!(report.premise_holds, "pointwise relation failed");
        assert!(report.conclusion_holds, "aggregate transfer failed");
    }
}
