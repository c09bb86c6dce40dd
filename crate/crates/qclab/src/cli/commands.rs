//! Command implementations behind the binary: run a configured
//! experiment, verify a named suite, or merge result files into
//! plot-ready data. Exit codes: 0 success, 1 verification failure,
//! 2 validation error, 3 runtime failure.

use super::config::{parse_config, ExperimentConfig, ExperimentKind};
use crate::bounds::{
    distinguishing_statistics, expected_bs, optimal_avg_dtree, simon_one_inputs_count, BsMode,
};
use crate::harness::{
    avg_complexity, certify_bounded_error, distinguishing_experiment, scaling_sweep, seeds,
    Budget, CertScope, Experiment, HarnessError, SummaryStats,
};
use crate::numeric::fit_loglog;
use crate::oracle::FunctionKind;
use crate::verify::{run_suite, write_results, Suite};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Flag-level overrides applied on top of the configuration file.
#[derive(Debug, Default, Clone)]
pub struct CliOverrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub exact: bool,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

pub fn cmd_run(config_path: &Path, overrides: &CliOverrides) -> i32 {
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read config {}: {e}", config_path.display());
            return EXIT_VALIDATION;
        }
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("invalid config: {e}");
            return EXIT_VALIDATION;
        }
    };
    if let Some(seed) = overrides.seed {
        cfg.seed = seed;
    }
    if overrides.exact {
        cfg.exact = true;
    }
    let out_dir = overrides
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&cfg.out_dir));
    match execute(&cfg, &out_dir) {
        Ok(digest) => {
            println!("{digest}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("run failed: {e}");
            EXIT_RUNTIME
        }
    }
}

pub fn cmd_verify(suite_str: &str, seed: u64, out: Option<&Path>) -> i32 {
    let suite: Suite = match suite_str.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_VALIDATION;
        }
    };
    let results = run_suite(suite, seed);
    if let Some(dir) = out {
        if let Err(e) = write_results(dir, suite, seed, &results) {
            eprintln!("cannot write results: {e}");
            return EXIT_RUNTIME;
        }
    }
    if results.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    }
}

pub fn cmd_report(dir: &Path) -> i32 {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("cannot read {}: {e}", dir.display());
            return EXIT_VALIDATION;
        }
    };
    let mut groups: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    let mut names: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "csv")
                && !p
                    .file_name()
                    .is_some_and(|n| n.to_string_lossy().starts_with("report_"))
        })
        .collect();
    names.sort();
    for path in names {
        let Ok(text) = std::fs::read_to_string(&path) else {
            continue;
        };
        let mut lines = text.lines();
        if lines.next() != Some("size,trials,mean_queries,stderr,min_success_rate,mode,seed") {
            continue; // not a harness result file
        }
        let mut points = Vec::new();
        for line in lines {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 7 {
                continue;
            }
            if let (Ok(size), Ok(mean)) = (cols[0].parse::<f64>(), cols[2].parse::<f64>()) {
                points.push((size, mean));
            }
        }
        if points.is_empty() {
            continue;
        }
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        groups.push((id, points));
    }
    if groups.is_empty() {
        eprintln!("no result files in {}", dir.display());
        return EXIT_VALIDATION;
    }
    let mut plot = String::from("experiment,size,log2_size,mean_queries,log2_mean\n");
    let mut slopes = String::from("experiment,slope,intercept,slope_stderr\n");
    for (id, points) in &groups {
        for (size, mean) in points {
            let _ = writeln!(
                plot,
                "{id},{size},{},{mean},{}",
                size.log2(),
                mean.log2()
            );
        }
        match fit_loglog(points) {
            Some(fit) if points.len() >= 2 => {
                let _ = writeln!(
                    slopes,
                    "{id},{},{},{}",
                    fit.slope, fit.intercept, fit.slope_stderr
                );
            }
            _ => {
                println!("{id}: single size point, slope omitted");
            }
        }
    }
    if std::fs::write(dir.join("report_plotdata.csv"), plot).is_err()
        || std::fs::write(dir.join("report_slopes.csv"), slopes).is_err()
    {
        eprintln!("cannot write report files");
        return EXIT_RUNTIME;
    }
    println!(
        "report: {} experiment(s) merged into {}",
        groups.len(),
        dir.join("report_plotdata.csv").display()
    );
    EXIT_OK
}

const HARNESS_CSV_HEADER: &str = "size,trials,mean_queries,stderr,min_success_rate,mode,seed";

fn stats_row(size: usize, stats: &SummaryStats, seed: u64) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        size,
        stats.trials,
        stats.mean_queries,
        stats.std_error,
        stats.min_success_rate,
        stats.mode,
        seed
    )
}

fn execute(cfg: &ExperimentConfig, out_dir: &Path) -> Result<String, HarnessError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| HarnessError::Mismatch(format!("cannot create output dir: {e}")))?;
    let mut summary = String::new();
    let _ = writeln!(summary, "qclab summary");
    let _ = writeln!(summary, "id = {}", cfg.id);
    let _ = writeln!(summary, "kind = {}", cfg.kind.as_str());
    let _ = writeln!(summary, "seed = {}", cfg.seed);

    let budget = if cfg.exact {
        Budget::Exact {
            inner_reps: cfg.inner_reps,
        }
    } else {
        Budget::MonteCarlo { trials: cfg.trials }
    };

    let digest = match cfg.kind {
        ExperimentKind::Run => {
            let exp = build_experiment(cfg, None)?;
            let stats = avg_complexity(&exp, budget, cfg.seed)?;
            let mut csv = format!("{HARNESS_CSV_HEADER}\n");
            csv.push_str(&stats_row(exp.function.arity(), &stats, cfg.seed));
            csv.push('\n');
            write_out(out_dir, &format!("{}.csv", cfg.id), &csv)?;
            write_pmf_if_available(cfg, out_dir, &exp)?;
            let _ = writeln!(
                summary,
                "mean_queries = {}\nstderr = {}\nmin_success_rate = {}",
                stats.mean_queries, stats.std_error, stats.min_success_rate
            );
            // Block-unit runs also report the bit-oracle conversion: one
            // n-bit block query costs at most n bit queries.
            if exp.algorithm.unit() == crate::oracle::QueryUnit::Block {
                let n = exp
                    .distribution
                    .block_width()
                    .expect("block experiments carry a layout");
                let _ = writeln!(summary, "query_unit = block[{n}]");
                let _ = writeln!(
                    summary,
                    "bit_equivalent_mean_queries = {}",
                    stats.mean_queries * n as f64
                );
            } else {
                let _ = writeln!(summary, "query_unit = bit");
            }
            format!(
                "run {}: mean {:.4} queries (se {:.4}), success {:.4}",
                cfg.id, stats.mean_queries, stats.std_error, stats.min_success_rate
            )
        }
        ExperimentKind::Sweep => {
            let sweep = scaling_sweep(&cfg.sweep_sizes, cfg.seed, |size| {
                build_experiment(cfg, Some(size)).map(|e| (e, budget))
            })?;
            let mut csv = format!("{HARNESS_CSV_HEADER}\n");
            for p in &sweep.points {
                csv.push_str(&stats_row(p.size, &p.stats, cfg.seed));
                csv.push('\n');
            }
            write_out(out_dir, &format!("{}.csv", cfg.id), &csv)?;
            match &sweep.fit {
                Some(fit) => {
                    let _ = writeln!(
                        summary,
                        "fitted_slope = {}\nfitted_intercept = {}\nslope_stderr = {}",
                        fit.slope, fit.intercept, fit.slope_stderr
                    );
                    format!(
                        "sweep {}: slope {:.4} over {} sizes",
                        cfg.id,
                        fit.slope,
                        sweep.points.len()
                    )
                }
                None => format!("sweep {}: slope unavailable", cfg.id),
            }
        }
        ExperimentKind::Certify => {
            let exp = build_experiment(cfg, None)?;
            let scope = match cfg.certify_scope.as_str() {
                "exhaustive" => CertScope::Exhaustive,
                "sampled" => CertScope::Sampled {
                    count: cfg.certify_inputs,
                },
                other => {
                    return Err(HarnessError::Mismatch(format!(
                        "unknown certify scope `{other}`"
                    )))
                }
            };
            let report = certify_bounded_error(&exp, scope, cfg.trials, cfg.seed)?;
            let stats = avg_complexity(&exp, budget, cfg.seed)?;
            let mut csv = format!("{HARNESS_CSV_HEADER}\n");
            csv.push_str(&stats_row(exp.function.arity(), &stats, cfg.seed));
            csv.push('\n');
            write_out(out_dir, &format!("{}.csv", cfg.id), &csv)?;
            let _ = writeln!(
                summary,
                "inputs_tested = {}\ntrials_per_input = {}\nmin_rate = {}\nworst_input = {}\npass = {}",
                report.inputs_tested,
                report.trials_per_input,
                report.min_rate,
                report.worst_input,
                report.pass
            );
            format!(
                "certify {}: min success {:.4} over {} inputs -> {}",
                cfg.id,
                report.min_rate,
                report.inputs_tested,
                if report.pass { "PASS" } else { "FAIL" }
            )
        }
        ExperimentKind::VerifyBounds => {
            let arity = function_arity(cfg)?;
            let f = cfg
                .build_function(arity)
                .map_err(|e| HarnessError::Mismatch(e.to_string()))?;
            let d = cfg
                .build_distribution(arity)
                .map_err(|e| HarnessError::Mismatch(e.to_string()))?;
            let mut rng = seeds::rng_for(cfg.seed, &[seeds::tag("verify-bounds")]);
            let mut rows = String::from("quantity,kind,value,margin\n");
            let lin = expected_bs(&f, &d, BsMode::Linear, &mut rng, 4000)?;
            let sq = expected_bs(&f, &d, BsMode::Sqrt, &mut rng, 4000)?;
            let _ = writeln!(
                rows,
                "expected_bs_linear,{},{},{}",
                if lin.stderr.is_none() { "exact" } else { "estimate" },
                lin.value,
                lin.stderr.unwrap_or(0.0)
            );
            let _ = writeln!(
                rows,
                "expected_bs_sqrt,{},{},{}",
                if sq.stderr.is_none() { "exact" } else { "estimate" },
                sq.value,
                sq.stderr.unwrap_or(0.0)
            );
            let mut digest_extra = String::new();
            let dtree_cap = if f.is_symmetric() { 14 } else { 12 };
            if arity <= dtree_cap {
                let out = optimal_avg_dtree(&f, &d)?;
                let _ = writeln!(rows, "optimal_avg_dtree,exact,{},0", out.value);
                write_out(out_dir, &format!("{}_tree.txt", cfg.id), &out.tree.render())?;
                let _ = write!(digest_extra, ", optimal tree value {:.4}", out.value);
            }
            if let FunctionKind::Simon { n } = f.kind() {
                if *n <= 3 {
                    let census = simon_one_inputs_count(*n)?;
                    let _ = writeln!(rows, "simon_one_inputs,exact,{},0", census.count);
                    let _ = writeln!(rows, "simon_one_fraction,exact,{},0", census.fraction);
                }
            }
            write_out(out_dir, &format!("{}.csv", cfg.id), &rows)?;
            let _ = writeln!(
                summary,
                "expected_bs_linear = {}\nexpected_bs_sqrt = {}",
                lin.value, sq.value
            );
            format!(
                "verify-bounds {}: E[bs] {:.4}, E[sqrt bs] {:.4}{digest_extra}",
                cfg.id, lin.value, sq.value
            )
        }
        ExperimentKind::Distinguish => {
            let outcome = distinguishing_experiment(
                cfg.distinguish_n,
                cfg.distinguish_m,
                cfg.trials as u32,
                cfg.seed,
            );
            let mut rng = seeds::rng_for(cfg.seed, &[seeds::tag("distinguish-stats")]);
            let stats = distinguishing_statistics(
                cfg.distinguish_n,
                cfg.distinguish_m,
                cfg.trials as u32,
                &mut rng,
            );
            let mut rows = String::from("quantity,kind,value,margin\n");
            let _ = writeln!(rows, "acceptance_gap,estimate,{},0", outcome.gap);
            let _ = writeln!(
                rows,
                "uniform_verdict_on_d1,estimate,{},0",
                outcome.p_uniform_verdict_on_d1
            );
            let _ = writeln!(
                rows,
                "uniform_verdict_on_d2,estimate,{},0",
                outcome.p_uniform_verdict_on_d2
            );
            let _ = writeln!(rows, "collision_threshold,exact,{},0", outcome.threshold);
            let _ = writeln!(
                rows,
                "all_distinct_d1,estimate,{},0",
                stats.all_distinct_d1
            );
            let _ = writeln!(
                rows,
                "all_distinct_d2,estimate,{},0",
                stats.all_distinct_d2
            );
            let _ = writeln!(rows, "pair_hit_d2,estimate,{},0", stats.pair_hit_d2);
            write_out(out_dir, &format!("{}.csv", cfg.id), &rows)?;
            let _ = writeln!(summary, "gap = {}", outcome.gap);
            format!(
                "distinguish {}: gap {:.4} at n={} m={}",
                cfg.id, outcome.gap, cfg.distinguish_n, cfg.distinguish_m
            )
        }
    };

    let _ = writeln!(summary);
    let _ = writeln!(summary, "[config-echo]");
    summary.push_str(&cfg.echo);
    write_out(out_dir, &format!("{}_summary.txt", cfg.id), &summary)?;
    Ok(digest)
}

fn function_arity(cfg: &ExperimentConfig) -> Result<usize, HarnessError> {
    let spec = cfg
        .function
        .as_ref()
        .ok_or_else(|| HarnessError::Mismatch("missing function".into()))?;
    if spec.kind == "simon" {
        let n = spec
            .n
            .ok_or_else(|| HarnessError::Mismatch("simon needs n".into()))?;
        return Ok(n << n);
    }
    spec.n_bits
        .ok_or_else(|| HarnessError::Mismatch("function needs n_bits".into()))
}

fn build_experiment(
    cfg: &ExperimentConfig,
    size: Option<usize>,
) -> Result<Experiment, HarnessError> {
    let arity = match size {
        Some(s) => s,
        None => function_arity(cfg)?,
    };
    let function = cfg
        .build_function(arity)
        .map_err(|e| HarnessError::Mismatch(e.to_string()))?;
    let distribution = cfg
        .build_distribution(arity)
        .map_err(|e| HarnessError::Mismatch(e.to_string()))?;
    let algorithm = cfg
        .build_algorithm(&function)
        .map_err(|e| HarnessError::Mismatch(e.to_string()))?;
    let exp = Experiment {
        algorithm,
        function,
        distribution,
    };
    exp.validate()?;
    Ok(exp)
}

fn write_pmf_if_available(
    cfg: &ExperimentConfig,
    out_dir: &Path,
    exp: &Experiment,
) -> Result<(), HarnessError> {
    if let Some(pmf) = exp.distribution.weight_pmf() {
        let mut csv = String::from("weight,probability\n");
        for (w, p) in pmf.iter().enumerate() {
            let _ = writeln!(csv, "{w},{p}");
        }
        write_out(out_dir, &format!("{}_pmf.csv", cfg.id), &csv)?;
    }
    Ok(())
}

fn write_out(dir: &Path, name: &str, content: &str) -> Result<(), HarnessError> {
    std::fs::write(dir.join(name), content)
        .map_err(|e| HarnessError::Mismatch(format!("cannot write {name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_writes_csv_and_summary_with_echo() {
        let dir = tempfile::tempdir().unwrap();
        let cfg_text = "\
schema = qclab/1
[experiment]
kind = run
id = demo
seed = 5
trials = 40
[algorithm]
name = classical-or-sampler
[function]
kind = or
n_bits = 32
[distribution]
kind = uniform
";
        let cfg_path = dir.path().join("demo.conf");
        std::fs::write(&cfg_path, cfg_text).unwrap();
        let code = cmd_run(
            &cfg_path,
            &CliOverrides {
                out: Some(dir.path().to_path_buf()),
                ..Default::default()
            },
        );
        assert_eq!(code, EXIT_OK);
        let csv = std::fs::read_to_string(dir.path().join("demo.csv")).unwrap();
        assert!(csv.starts_with(HARNESS_CSV_HEADER));
        let summary = std::fs::read_to_string(dir.path().join("demo_summary.txt")).unwrap();
        assert!(summary.contains("[config-echo]"));
        assert!(summary.contains("kind = run"));
        // The echo re-validates.
        let echo = summary.split("[config-echo]").nth(1).unwrap();
        parse_config(echo.trim_start()).unwrap();
    }

    #[test]
    fn bad_config_exits_2() {
        let dir = tempfile::tempdir().unwrap();
        let cfg_path = dir.path().join("bad.conf");
        std::fs::write(&cfg_path, "schema = qclab/1\n[experiment]\nkind = dance\n").unwrap();
        assert_eq!(cmd_run(&cfg_path, &CliOverrides::default()), EXIT_VALIDATION);
        // Missing file is a validation error too.
        assert_eq!(
            cmd_run(&dir.path().join("absent.conf"), &CliOverrides::default()),
            EXIT_VALIDATION
        );
    }

    #[test]
    fn report_merges_and_flags_single_points() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("sweep.csv"),
            "size,trials,mean_queries,stderr,min_success_rate,mode,seed\n\
             16,10,4,0.1,1,monte-carlo,1\n32,10,8,0.1,1,monte-carlo,1\n",
        )
        .unwrap();
        std::fs::write(
            dir.path().join("single.csv"),
            "size,trials,mean_queries,stderr,min_success_rate,mode,seed\n\
             16,10,4,0.1,1,monte-carlo,1\n",
        )
        .unwrap();
        assert_eq!(cmd_report(dir.path()), EXIT_OK);
        let slopes = std::fs::read_to_string(dir.path().join("report_slopes.csv")).unwrap();
        assert!(slopes.contains("sweep,1,"));
        assert!(!slopes.contains("single"));
        let empty = tempfile::tempdir().unwrap();
        assert_eq!(cmd_report(empty.path()), EXIT_VALIDATION);
    }

    #[test]
    fn verify_rejects_unknown_suites() {
        assert_eq!(cmd_verify("everything", 1, None), EXIT_VALIDATION);
    }
}
