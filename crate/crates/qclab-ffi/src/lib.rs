//! C ABI over the query-cost laboratory, so other languages can evaluate
//! the shipped Boolean functions, execute configured experiments, and run
//! verification suites.
//!
//! Conventions: functions return a `qclab_status` code (0 success,
//! positive = domain outcome, negative = error); results come back
//! through out-pointers or opaque handles with explicit `_free`
//! functions; `qclab_last_error_message` describes the most recent
//! failure on the calling thread. The shipped header lives at
//! `include/qclab.h` and is maintained by hand against this file.

use qclab::cli::{parse_config, ExperimentKind};
use qclab::dist::InputDistribution;
use qclab::harness::{avg_complexity, Budget, Experiment, SummaryStats};
use qclab::oracle::{BitInput, BooleanFunction};
use qclab::verify::{run_suite, write_results, Suite};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::ptr;

pub const QCLAB_OK: i32 = 0;
/// A verification suite ran to completion but some criterion failed.
pub const QCLAB_VERIFY_FAILURES: i32 = 1;
pub const QCLAB_ERR_NULL_POINTER: i32 = -1;
pub const QCLAB_ERR_BAD_UTF8: i32 = -2;
pub const QCLAB_ERR_INVALID_CONFIG: i32 = -3;
pub const QCLAB_ERR_RUNTIME: i32 = -4;
pub const QCLAB_ERR_BAD_PARAM: i32 = -5;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

/// Message describing the calling thread's most recent error. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qclab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn qclab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

unsafe fn cstr_arg(ptr: *const c_char, name: &str) -> Result<String, i32> {
    if ptr.is_null() {
        set_error(format!("{name} is NULL"));
        return Err(QCLAB_ERR_NULL_POINTER);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(s.to_string()),
        Err(_) => {
            set_error(format!("{name} is not valid UTF-8"));
            Err(QCLAB_ERR_BAD_UTF8)
        }
    }
}

fn function_from_name(kind: &str, arity: usize, block_n: i32) -> Result<BooleanFunction, i32> {
    match kind {
        "or" => Ok(BooleanFunction::or(arity)),
        "maj" => Ok(BooleanFunction::maj(arity)),
        "parity" => Ok(BooleanFunction::parity(arity)),
        "threshold" => Ok(BooleanFunction::threshold(arity, 1, 10)),
        "simon" => {
            if block_n <= 0 {
                set_error("simon needs a positive block width");
                return Err(QCLAB_ERR_BAD_PARAM);
            }
            let n = block_n as usize;
            if (n << n) != arity {
                set_error(format!("arity {arity} is not n*2^n for n={n}"));
                return Err(QCLAB_ERR_BAD_PARAM);
            }
            Ok(BooleanFunction::simon(n))
        }
        other => {
            set_error(format!("unknown function kind `{other}`"));
            Err(QCLAB_ERR_BAD_PARAM)
        }
    }
}

/// Evaluates a named function on a hex-serialised input of `arity` bits.
/// `block_n` is the hidden-period block width (pass 0 for the other
/// kinds). The bit value lands in `*out_value`.
///
/// # Safety
/// `kind` and `input_hex` must be NUL-terminated strings valid for the
/// duration of the call; `out_value` must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn qclab_evaluate(
    kind: *const c_char,
    arity: u32,
    block_n: i32,
    input_hex: *const c_char,
    out_value: *mut u8,
) -> i32 {
    if out_value.is_null() {
        set_error("out_value is NULL");
        return QCLAB_ERR_NULL_POINTER;
    }
    let kind = match cstr_arg(kind, "kind") {
        Ok(s) => s,
        Err(code) => return code,
    };
    let hex = match cstr_arg(input_hex, "input_hex") {
        Ok(s) => s,
        Err(code) => return code,
    };
    let f = match function_from_name(&kind, arity as usize, block_n) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let x = match BitInput::from_hex(arity as usize, &hex) {
        Ok(x) => x,
        Err(e) => {
            set_error(e.to_string());
            return QCLAB_ERR_BAD_PARAM;
        }
    };
    match f.evaluate(&x) {
        Ok(v) => {
            *out_value = v;
            QCLAB_OK
        }
        Err(e) => {
            set_error(e.to_string());
            QCLAB_ERR_BAD_PARAM
        }
    }
}

/// Opaque aggregated result of one experiment run.
pub struct QclabSummary {
    stats: SummaryStats,
}

/// Parses a `run`-kind configuration (the same grammar the CLI reads) and
/// estimates the distribution-weighted expected query count. A
/// non-negative `seed_override` replaces the configured seed. On success
/// `*out_summary` owns a handle to be released with
/// `qclab_summary_free`.
///
/// # Safety
/// `config_text` must be a NUL-terminated string and `out_summary` a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn qclab_run_experiment(
    config_text: *const c_char,
    seed_override: i64,
    out_summary: *mut *mut QclabSummary,
) -> i32 {
    if out_summary.is_null() {
        set_error("out_summary is NULL");
        return QCLAB_ERR_NULL_POINTER;
    }
    *out_summary = ptr::null_mut();
    let text = match cstr_arg(config_text, "config_text") {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            set_error(e.to_string());
            return QCLAB_ERR_INVALID_CONFIG;
        }
    };
    if cfg.kind != ExperimentKind::Run {
        set_error("only `kind = run` experiments are exposed through this entry point");
        return QCLAB_ERR_INVALID_CONFIG;
    }
    if seed_override >= 0 {
        cfg.seed = seed_override as u64;
    }
    let arity = match experiment_arity(&cfg) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let function = match cfg.build_function(arity) {
        Ok(f) => f,
        Err(e) => {
            set_error(e.to_string());
            return QCLAB_ERR_INVALID_CONFIG;
        }
    };
    let distribution: InputDistribution = match cfg.build_distribution(arity) {
        Ok(d) => d,
        Err(e) => {
            set_error(e.to_string());
            return QCLAB_ERR_INVALID_CONFIG;
        }
    };
    let algorithm = match cfg.build_algorithm(&function) {
        Ok(a) => a,
        Err(e) => {
            set_error(e.to_string());
            return QCLAB_ERR_INVALID_CONFIG;
        }
    };
    let exp = Experiment {
        algorithm,
        function,
        distribution,
    };
    let budget = if cfg.exact {
        Budget::Exact {
            inner_reps: cfg.inner_reps,
        }
    } else {
        Budget::MonteCarlo { trials: cfg.trials }
    };
    match avg_complexity(&exp, budget, cfg.seed) {
        Ok(stats) => {
            *out_summary = Box::into_raw(Box::new(QclabSummary { stats }));
            QCLAB_OK
        }
        Err(e) => {
            set_error(e.to_string());
            QCLAB_ERR_RUNTIME
        }
    }
}

fn experiment_arity(cfg: &qclab::cli::ExperimentConfig) -> Result<usize, i32> {
    let Some(f) = &cfg.function else {
        set_error("configuration has no [function] section");
        return Err(QCLAB_ERR_INVALID_CONFIG);
    };
    if f.kind == "simon" {
        let Some(n) = f.n else {
            set_error("simon needs n");
            return Err(QCLAB_ERR_INVALID_CONFIG);
        };
        return Ok(n << n);
    }
    match f.n_bits {
        Some(n) => Ok(n),
        None => {
            set_error("function needs n_bits");
            Err(QCLAB_ERR_INVALID_CONFIG)
        }
    }
}

/// # Safety
/// `summary` must come from `qclab_run_experiment` and not already freed.
#[no_mangle]
pub unsafe extern "C" fn qclab_summary_free(summary: *mut QclabSummary) {
    if !summary.is_null() {
        drop(Box::from_raw(summary));
    }
}

/// # Safety
/// `summary` must be a live handle from `qclab_run_experiment`.
#[no_mangle]
pub unsafe extern "C" fn qclab_summary_mean_queries(summary: *const QclabSummary) -> f64 {
    summary.as_ref().map_or(f64::NAN, |s| s.stats.mean_queries)
}

/// # Safety
/// `summary` must be a live handle from `qclab_run_experiment`.
#[no_mangle]
pub unsafe extern "C" fn qclab_summary_std_error(summary: *const QclabSummary) -> f64 {
    summary.as_ref().map_or(f64::NAN, |s| s.stats.std_error)
}

/// # Safety
/// `summary` must be a live handle from `qclab_run_experiment`.
#[no_mangle]
pub unsafe extern "C" fn qclab_summary_success_rate(summary: *const QclabSummary) -> f64 {
    summary
        .as_ref()
        .map_or(f64::NAN, |s| s.stats.min_success_rate)
}

/// # Safety
/// `summary` must be a live handle from `qclab_run_experiment`.
#[no_mangle]
pub unsafe extern "C" fn qclab_summary_trials(summary: *const QclabSummary) -> u64 {
    summary.as_ref().map_or(0, |s| s.stats.trials)
}

/// Runs a named verification suite (`simon`, `or-gap`, `majority`,
/// `parity`, `bounds`, `all`), optionally persisting result files to
/// `out_dir` (pass NULL to skip). Returns 0 when every criterion passed,
/// 1 when some failed, negative codes on errors.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `out_dir`, when non-NULL,
/// must be one as well.
#[no_mangle]
pub unsafe extern "C" fn qclab_verify_suite(
    suite: *const c_char,
    seed: u64,
    out_dir: *const c_char,
) -> i32 {
    let name = match cstr_arg(suite, "suite") {
        Ok(s) => s,
        Err(code) => return code,
    };
    let suite: Suite = match name.parse() {
        Ok(s) => s,
        Err(e) => {
            set_error(e);
            return QCLAB_ERR_BAD_PARAM;
        }
    };
    let results = run_suite(suite, seed);
    if !out_dir.is_null() {
        let dir = match cstr_arg(out_dir, "out_dir") {
            Ok(s) => s,
            Err(code) => return code,
        };
        if let Err(e) = write_results(Path::new(&dir), suite, seed, &results) {
            set_error(e.to_string());
            return QCLAB_ERR_RUNTIME;
        }
    }
    if results.iter().all(|r| r.pass) {
        QCLAB_OK
    } else {
        QCLAB_VERIFY_FAILURES
    }
}
