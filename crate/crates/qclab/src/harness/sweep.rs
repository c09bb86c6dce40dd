//! Size sweeps with a fitted log-log growth exponent.

use super::records::SummaryStats;
use super::runner::{avg_complexity, Budget, Experiment};
use super::HarnessError;
use crate::numeric::{fit_loglog, LineFit};

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub size: usize,
    pub stats: SummaryStats,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    /// Least-squares slope of log2(mean queries) against log2(size).
    pub fit: Option<LineFit>,
}

/// Runs the experiment built by `build` at every size and fits the
/// growth exponent. Requires at least 3 sizes.
pub fn scaling_sweep<F>(sizes: &[usize], seed: u64, build: F) -> Result<SweepResult, HarnessError>
where
    F: Fn(usize) -> Result<(Experiment, Budget), HarnessError>,
{
    if sizes.len() < 3 {
        return Err(HarnessError::TooFewSizes(sizes.len()));
    }
    let mut points = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let (exp, budget) = build(size)?;
        let stats = avg_complexity(&exp, budget, seed)?;
        points.push(SweepPoint { size, stats });
    }
    let data: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.size as f64, p.stats.mean_queries))
        .collect();
    Ok(SweepResult {
        fit: fit_loglog(&data),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::Algorithm;
    use crate::dist::InputDistribution;
    use crate::oracle::BooleanFunction;

    #[test]
    fn full_count_sweep_fits_slope_one() {
        let sizes = [16, 32, 64, 128];
        let result = scaling_sweep(&sizes, 3, |n| {
            let f = BooleanFunction::maj(n);
            Ok((
                Experiment {
                    algorithm: Algorithm::FullCount(f.clone()),
                    function: f,
                    distribution: InputDistribution::uniform(n),
                },
                Budget::MonteCarlo { trials: 50 },
            ))
        })
        .unwrap();
        let fit = result.fit.unwrap();
        assert!((fit.slope - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_sizes_are_rejected() {
        let err = scaling_sweep(&[8, 16], 0, |_| unreachable!());
        assert!(matches!(err, Err(HarnessError::TooFewSizes(2))));
    }
}
