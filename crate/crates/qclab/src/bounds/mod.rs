//! Exact combinatorial quantities referenced by the measured bounds:
//! block sensitivity, optimal average-cost decision trees, unique-period
//! input counts, transcript statistics, and the concavity check that
//! transfers pointwise cost relations to averages.

mod block_sens;
mod dtree;
mod simon_count;
mod stats;

pub use block_sens::{block_sensitivity, expected_bs, BsAverage, BsMode};
pub use dtree::{optimal_avg_dtree, DecisionTree, DtreeOutcome};
pub use simon_count::{simon_one_inputs_count, SimonOneInputs};
pub use stats::{distinguishing_statistics, jensen_check, DistinguishStats, JensenReport};

use crate::dist::DistError;
use crate::oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("input size {n} exceeds the exact-computation cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("operation not available for this function kind: {0}")]
    UnsupportedKind(String),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
