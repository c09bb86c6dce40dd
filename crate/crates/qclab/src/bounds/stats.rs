//! Transcript statistics for the two hidden-period distributions, and the
//! concavity transfer check for measured per-input costs.

use crate::dist::{sample_simon_d2_with_period, InputDistribution};
use rand::Rng;

/// Measured probabilities over `trials` transcripts of `m` distinct block
/// queries, with the analytic thresholds they are checked against.
#[derive(Debug, Clone, Copy)]
pub struct DistinguishStats {
    pub n: usize,
    pub m: usize,
    pub trials: u32,
    /// Fraction of transcripts with pairwise-distinct answers, input
    /// drawn uniformly.
    pub all_distinct_d1: f64,
    /// Same under the unique-period distribution.
    pub all_distinct_d2: f64,
    /// Fraction of unique-period transcripts that queried both ends of
    /// some period pair (i, i ^ k).
    pub pair_hit_d2: f64,
    /// Analytic floor 1 - m(m-1)/2^(n+1) minus three sigmas.
    pub d1_distinct_floor: f64,
    /// Analytic ceiling C(m,2)/(2^n - 1) plus three sigmas.
    pub pair_hit_ceiling: f64,
    pub within_bounds: bool,
}

/// Samples inputs from both distributions, issues `m` uniformly random
/// distinct block queries, and tallies transcript collisions.
pub fn distinguishing_statistics<R: Rng>(
    n: usize,
    m: usize,
    trials: u32,
    rng: &mut R,
) -> DistinguishStats {
    assert!(m >= 1 && m <= 1 << n, "query budget must fit the domain");
    let d1 = InputDistribution::simon_d1(n);
    let mut distinct_d1 = 0u64;
    let mut distinct_d2 = 0u64;
    let mut pair_hit = 0u64;
    for _ in 0..trials {
        let x = d1.sample(rng);
        let idx = distinct_indices(1 << n, m, rng);
        let answers: Vec<u64> = idx.iter().map(|&i| x.block(i)).collect();
        distinct_d1 += u64::from(all_distinct(&answers));

        let (y, k, _) = sample_simon_d2_with_period(n, rng);
        let idx2 = distinct_indices(1 << n, m, rng);
        let answers2: Vec<u64> = idx2.iter().map(|&i| y.block(i)).collect();
        distinct_d2 += u64::from(all_distinct(&answers2));
        let hit = idx2
            .iter()
            .any(|&i| idx2.contains(&((i as u64 ^ k) as usize)) && (i as u64 ^ k) != i as u64);
        pair_hit += u64::from(hit);
    }
    let t = trials as f64;
    let all_distinct_d1 = distinct_d1 as f64 / t;
    let all_distinct_d2 = distinct_d2 as f64 / t;
    let pair_hit_d2 = pair_hit as f64 / t;
    let sigma = 0.5 / t.sqrt();
    let d1_distinct_floor =
        1.0 - (m * (m - 1)) as f64 / (1u64 << (n + 1)) as f64 - 3.0 * sigma;
    let pair_hit_ceiling =
        (m * (m - 1)) as f64 / 2.0 / ((1u64 << n) - 1) as f64 + 3.0 * sigma;
    DistinguishStats {
        n,
        m,
        trials,
        all_distinct_d1,
        all_distinct_d2,
        pair_hit_d2,
        d1_distinct_floor,
        pair_hit_ceiling,
        within_bounds: all_distinct_d1 >= d1_distinct_floor && pair_hit_d2 <= pair_hit_ceiling,
    }
}

fn distinct_indices<R: Rng>(domain: usize, m: usize, rng: &mut R) -> Vec<usize> {
    let mut picked = Vec::with_capacity(m);
    while picked.len() < m {
        let i = rng.random_range(0..domain);
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked
}

fn all_distinct(values: &[u64]) -> bool {
    for (i, v) in values.iter().enumerate() {
        if values[..i].contains(v) {
            return false;
        }
    }
    true
}

/// Verdict of the concavity transfer: when the pointwise relation
/// T_A(X) <= phi(T_B(X)) holds on the measured support, the weighted
/// averages must satisfy avg_A <= phi(avg_B).
#[derive(Debug, Clone, Copy)]
pub struct JensenReport {
    pub premise_holds: bool,
    pub avg_a: f64,
    pub phi_of_avg_b: f64,
    pub conclusion_holds: bool,
}

/// `points` are (weight, T_A(X), T_B(X)) triples covering the support;
/// weights must sum to 1 within 1e-6.
pub fn jensen_check<F: Fn(f64) -> f64>(points: &[(f64, f64, f64)], phi: F) -> JensenReport {
    let total_w: f64 = points.iter().map(|p| p.0).sum();
    debug_assert!((total_w - 1.0).abs() < 1e-6, "weights sum to {total_w}");
    let premise_holds = points.iter().all(|&(_, a, b)| a <= phi(b) + 1e-12);
    let avg_a: f64 = points.iter().map(|&(w, a, _)| w * a).sum();
    let avg_b: f64 = points.iter().map(|&(w, _, b)| w * b).sum();
    let phi_of_avg_b = phi(avg_b);
    JensenReport {
        premise_holds,
        avg_a,
        phi_of_avg_b,
        conclusion_holds: avg_a <= phi_of_avg_b + 1e-9,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn single_query_statistics_are_degenerate() {
        let s = distinguishing_statistics(4, 1, 500, &mut rng(1));
        assert_eq!(s.all_distinct_d1, 1.0);
        assert_eq!(s.all_distinct_d2, 1.0);
        assert_eq!(s.pair_hit_d2, 0.0);
        assert!(s.within_bounds);
    }

    #[test]
    fn n6_m4_bounds_hold() {
        let s = distinguishing_statistics(6, 4, 10_000, &mut rng(2));
        // Floor 1 - 12/128 - 3 sigma and ceiling 6/63 + 3 sigma.
        assert!(s.all_distinct_d1 >= 1.0 - 12.0 / 128.0 - 0.015);
        assert!(s.pair_hit_d2 <= 6.0 / 63.0 + 0.015);
        assert!(s.within_bounds);
    }

    #[test]
    fn jensen_identity_is_equality() {
        let pts: Vec<(f64, f64, f64)> = (0..4).map(|i| (0.25, i as f64, i as f64)).collect();
        let rep = jensen_check(&pts, |x| x);
        assert!(rep.premise_holds);
        assert!(rep.conclusion_holds);
        assert!((rep.avg_a - rep.phi_of_avg_b).abs() < 1e-12);
    }

    #[test]
    fn jensen_sqrt_transfer() {
        // T_A = sqrt(T_B) pointwise implies avg_A <= sqrt(avg_B).
        let pts: Vec<(f64, f64, f64)> = [1.0, 4.0, 9.0, 16.0]
            .iter()
            .map(|&b: &f64| (0.25, b.sqrt(), b))
            .collect();
        let rep = jensen_check(&pts, |x| x.sqrt());
        assert!(rep.premise_holds);
        assert!(rep.conclusion_holds);
        assert!(rep.avg_a < rep.phi_of_avg_b);
    }

    #[test]
    fn jensen_flags_a_broken_premise() {
        let pts = vec![(0.5, 10.0, 4.0), (0.5, 1.0, 4.0)];
        let rep = jensen_check(&pts, |x| x.sqrt());
        assert!(!rep.premise_holds);
    }
}
