//! Average-case estimation, correctness certification, scaling sweeps,
//! and the distribution-distinguishing experiment.
//!
//! All randomness flows from one master seed through a documented
//! derivation (experiment tag, then input/trial indices), so identical
//! configurations reproduce identical results bit for bit, including
//! under parallel execution.

mod distinguish;
mod records;
mod runner;
pub mod seeds;
mod sweep;

pub use distinguish::{
    collision_threshold, distinguishing_experiment, full_information_gap, transcript_decider,
    DistinguishOutcome,
};
pub use records::{CertReport, EstimateMode, RunRecord, SummaryStats};
pub use runner::{avg_complexity, certify_bounded_error, run_once, Budget, CertScope, Experiment};
pub use sweep::{scaling_sweep, SweepPoint, SweepResult};

use crate::algorithms::AlgoError;
use crate::bounds::BoundsError;
use crate::dist::DistError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Algo(#[from] AlgoError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("experiment is inconsistent: {0}")]
    Mismatch(String),
    #[error("a scaling sweep needs at least 3 sizes, got {0}")]
    TooFewSizes(usize),
}
