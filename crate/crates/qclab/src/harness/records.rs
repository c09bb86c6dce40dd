//! Per-run records and aggregated estimates.

/// Everything one run produced. `input` is the hex literal for small
/// inputs and a 64-bit digest for large ones; `wall_time_s` is advisory
/// and never written to result files.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub algorithm: String,
    pub tunables: String,
    pub function: String,
    pub distribution: String,
    pub input: String,
    pub seed: u64,
    pub output: u8,
    pub correct: bool,
    pub bit_queries: u64,
    pub block_queries: u64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateMode {
    MonteCarlo,
    ExactEnumeration,
}

impl std::fmt::Display for EstimateMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EstimateMode::MonteCarlo => "monte-carlo",
            EstimateMode::ExactEnumeration => "exact-enumeration",
        })
    }
}

/// Aggregated estimate of the distribution-weighted expected query count.
#[derive(Debug, Clone, Copy)]
pub struct SummaryStats {
    pub mean_queries: f64,
    pub std_error: f64,
    /// Minimum per-input success rate in exact mode; the overall success
    /// fraction in Monte Carlo mode.
    pub min_success_rate: f64,
    pub trials: u64,
    pub mode: EstimateMode,
}

/// Result of a per-input correctness certification.
#[derive(Debug, Clone)]
pub struct CertReport {
    pub inputs_tested: u64,
    pub trials_per_input: u64,
    pub min_rate: f64,
    pub mean_rate: f64,
    /// Input (hex or digest) realising the minimum rate.
    pub worst_input: String,
    /// Inputs a zero-error algorithm answered wrongly at least once.
    pub zero_error_violations: u64,
    pub pass: bool,
}
