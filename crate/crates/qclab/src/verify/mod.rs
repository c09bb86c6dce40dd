//! The checkable claims the lab ships with, each pinned to a measured
//! quantity and a threshold, runnable one suite at a time.
//!
//! Every criterion prints one PASS/FAIL line and emits deterministic CSV
//! rows (quantity, kind, value, threshold); nothing time-dependent enters
//! the persisted output, so a fixed seed reproduces byte-identical files.

mod criteria;

pub use criteria::*;

use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

/// One measured row persisted for a criterion.
#[derive(Debug, Clone)]
pub struct MeasuredRow {
    pub quantity: String,
    /// "exact" or "estimate".
    pub kind: &'static str,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
    pub rows: Vec<MeasuredRow>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} [{}] {} -- {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Simon,
    OrGap,
    Majority,
    Parity,
    Bounds,
    All,
}

impl Suite {
    pub fn criteria(&self) -> Vec<u32> {
        match self {
            Suite::Simon => vec![1, 2, 3],
            Suite::OrGap => vec![6],
            Suite::Majority => vec![4, 5],
            Suite::Parity => vec![7],
            Suite::Bounds => vec![8, 9],
            Suite::All => (1..=9).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simon" => Ok(Suite::Simon),
            "or-gap" => Ok(Suite::OrGap),
            "majority" => Ok(Suite::Majority),
            "parity" => Ok(Suite::Parity),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}`; expected simon|or-gap|majority|parity|bounds|all"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Simon => "simon",
            Suite::OrGap => "or-gap",
            Suite::Majority => "majority",
            Suite::Parity => "parity",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        })
    }
}

/// Runs one criterion by id.
pub fn run_criterion(id: u32, seed: u64) -> CriterionResult {
    match id {
        1 => criterion_1_simon_upper_bound(seed),
        2 => criterion_2_simon_first_phase(seed),
        3 => criterion_3_classical_hardness(seed),
        4 => criterion_4_qcount_guarantee(seed),
        5 => criterion_5_majority_scaling(seed),
        6 => criterion_6_or_gap(seed),
        7 => criterion_7_parity_suite(seed),
        8 => criterion_8_bounds_toolkit(seed),
        9 => criterion_9_threshold_sampler(seed),
        other => panic!("no criterion {other}"),
    }
}

/// Runs a suite, printing one line per criterion.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<CriterionResult> {
    suite
        .criteria()
        .into_iter()
        .map(|id| {
            let result = run_criterion(id, seed);
            println!("{}", result.line());
            result
        })
        .collect()
}

/// Persists results: one CSV per criterion plus a summary, all
/// deterministic in content.
pub fn write_results(
    dir: &Path,
    suite: Suite,
    seed: u64,
    results: &[CriterionResult],
) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for r in results {
        let path = dir.join(format!("criterion_{:02}_{}.csv", r.id, r.name));
        let mut f = std::fs::File::create(path)?;
        writeln!(f, "quantity,kind,value,threshold")?;
        for row in &r.rows {
            writeln!(
                f,
                "{},{},{},{}",
                row.quantity, row.kind, row.value, row.threshold
            )?;
        }
    }
    let mut f = std::fs::File::create(dir.join("verify_summary.txt"))?;
    writeln!(f, "suite = {suite}")?;
    writeln!(f, "seed = {seed}")?;
    for r in results {
        writeln!(f, "{}", r.line())?;
    }
    writeln!(
        f,
        "overall = {}",
        if results.iter().all(|r| r.pass) {
            "PASS"
        } else {
            "FAIL"
        }
    )?;
    Ok(())
}
