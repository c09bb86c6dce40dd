//! The experiment configuration grammar: flat, line-oriented
//! `key = value` pairs under `[section]` headers, versioned by a leading
//! `schema = qclab/1` line. Unknown sections and keys are rejected, and
//! every value is validated before any computation starts.

use crate::algorithms::{
    Algorithm, GroverParams, MajorityParams, ParityInner, ThresholdParams,
};
use crate::dist::InputDistribution;
use crate::oracle::{BitInput, BooleanFunction};
use std::collections::BTreeSet;
use thiserror::Error;

pub const SCHEMA_ID: &str = "qclab/1";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing schema line; the first entry must be `schema = {SCHEMA_ID}`")]
    MissingSchema,
    #[error("unsupported schema `{0}`, expected `{SCHEMA_ID}`")]
    WrongSchema(String),
    #[error("unknown section `[{0}]`")]
    UnknownSection(String),
    #[error("unknown key `{key}` in section [{section}]")]
    UnknownKey { section: String, key: String },
    #[error("section [{section}] is missing required key `{key}`")]
    MissingKey { section: String, key: String },
    #[error("bad value for `{key}`: {msg}")]
    BadValue { key: String, msg: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Run,
    Sweep,
    Certify,
    VerifyBounds,
    Distinguish,
}

impl ExperimentKind {
    fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "run" => Ok(ExperimentKind::Run),
            "sweep" => Ok(ExperimentKind::Sweep),
            "certify" => Ok(ExperimentKind::Certify),
            "verify-bounds" => Ok(ExperimentKind::VerifyBounds),
            "distinguish" => Ok(ExperimentKind::Distinguish),
            other => Err(ConfigError::BadValue {
                key: "kind".into(),
                msg: format!("unknown experiment kind `{other}`"),
            }),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::Run => "run",
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::Certify => "certify",
            ExperimentKind::VerifyBounds => "verify-bounds",
            ExperimentKind::Distinguish => "distinguish",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FunctionSpec {
    pub kind: String,
    pub n_bits: Option<usize>,
    pub theta: Option<(u64, u64)>,
    pub n: Option<usize>,
    pub truth_hex: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct DistSpec {
    pub kind: String,
    pub alpha: Option<f64>,
    pub n: Option<usize>,
    pub entries: Vec<(usize, String, f64)>,
}

#[derive(Debug, Clone, Default)]
pub struct AlgorithmSpec {
    pub name: String,
    pub theta: Option<(u64, u64)>,
    pub batch_scale: Option<u64>,
    pub start_i: Option<u64>,
    pub rounds_per_n: Option<u64>,
    pub growth: Option<(u64, u64)>,
    pub budget_mult: Option<f64>,
    pub inner: Option<String>,
    pub sample_size: Option<u64>,
    pub stage_c: Option<u64>,
    pub count_k: Option<u64>,
    pub reps: Option<u32>,
}

/// A parsed, validated experiment description plus the original text for
/// the summary's config echo.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub id: String,
    pub seed: u64,
    pub trials: u64,
    pub exact: bool,
    pub inner_reps: u64,
    pub out_dir: String,
    pub algorithm: Option<AlgorithmSpec>,
    pub function: Option<FunctionSpec>,
    pub distribution: Option<DistSpec>,
    pub sweep_sizes: Vec<usize>,
    pub distinguish_n: usize,
    pub distinguish_m: usize,
    pub certify_scope: String,
    pub certify_inputs: u64,
    pub echo: String,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut section = String::new();
    let mut pairs: Vec<(String, String, String, usize)> = Vec::new();
    let mut schema_seen = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(ConfigError::Parse {
                line: lineno + 1,
                msg: "unterminated section header".into(),
            })?;
            section = name.trim().to_string();
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Parse {
            line: lineno + 1,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !schema_seen {
            if section.is_empty() && key == "schema" {
                if value != SCHEMA_ID {
                    return Err(ConfigError::WrongSchema(value));
                }
                schema_seen = true;
                continue;
            }
            return Err(ConfigError::MissingSchema);
        }
        pairs.push((section.clone(), key, value, lineno + 1));
    }
    if !schema_seen {
        return Err(ConfigError::MissingSchema);
    }

    let known_sections: BTreeSet<&str> = [
        "experiment",
        "algorithm",
        "function",
        "distribution",
        "sweep",
        "certify",
        "distinguish",
    ]
    .into();
    for (section, _, _, _) in &pairs {
        if !known_sections.contains(section.as_str()) {
            return Err(ConfigError::UnknownSection(section.clone()));
        }
    }

    // Only `entry` may repeat.
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for (section, key, _, line) in &pairs {
        if key != "entry" && !seen.insert((section.clone(), key.clone())) {
            return Err(ConfigError::Parse {
                line: *line,
                msg: format!("duplicate key `{key}` in section [{section}]"),
            });
        }
    }

    let get = |section: &str, key: &str| -> Option<String> {
        pairs
            .iter()
            .find(|(s, k, _, _)| s == section && k == key)
            .map(|(_, _, v, _)| v.clone())
    };
    let require = |section: &str, key: &str| -> Result<String, ConfigError> {
        get(section, key).ok_or(ConfigError::MissingKey {
            section: section.into(),
            key: key.into(),
        })
    };

    // Reject unknown keys per section.
    let allowed: &[(&str, &[&str])] = &[
        (
            "experiment",
            &["kind", "id", "seed", "trials", "exact", "inner_reps", "out"],
        ),
        (
            "algorithm",
            &[
                "name",
                "theta",
                "batch_scale",
                "start_i",
                "rounds_per_n",
                "growth",
                "budget_mult",
                "inner",
                "sample_size",
                "stage_c",
                "count_k",
                "reps",
            ],
        ),
        ("function", &["kind", "n_bits", "theta", "n", "truth_hex"]),
        ("distribution", &["kind", "alpha", "n", "entry"]),
        ("sweep", &["sizes"]),
        ("certify", &["scope", "inputs"]),
        ("distinguish", &["n", "m"]),
    ];
    for (section, key, _, _) in &pairs {
        let ok = allowed
            .iter()
            .find(|(s, _)| s == section)
            .is_some_and(|(_, keys)| keys.contains(&key.as_str()));
        if !ok {
            return Err(ConfigError::UnknownKey {
                section: section.clone(),
                key: key.clone(),
            });
        }
    }

    let kind = ExperimentKind::parse(&require("experiment", "kind")?)?;
    let seed = parse_u64("seed", &get("experiment", "seed").unwrap_or("1".into()))?;
    let trials = parse_u64("trials", &get("experiment", "trials").unwrap_or("1000".into()))?;
    let exact = parse_bool("exact", &get("experiment", "exact").unwrap_or("false".into()))?;
    let inner_reps = parse_u64(
        "inner_reps",
        &get("experiment", "inner_reps").unwrap_or("100".into()),
    )?;
    let out_dir = get("experiment", "out").unwrap_or("results".into());

    let algorithm = if pairs.iter().any(|(s, _, _, _)| s == "algorithm") {
        Some(AlgorithmSpec {
            name: require("algorithm", "name")?,
            theta: get("algorithm", "theta")
                .map(|v| parse_fraction("theta", &v))
                .transpose()?,
            batch_scale: get("algorithm", "batch_scale")
                .map(|v| parse_u64("batch_scale", &v))
                .transpose()?,
            start_i: get("algorithm", "start_i")
                .map(|v| parse_u64("start_i", &v))
                .transpose()?,
            rounds_per_n: get("algorithm", "rounds_per_n")
                .map(|v| parse_u64("rounds_per_n", &v))
                .transpose()?,
            growth: get("algorithm", "growth")
                .map(|v| parse_fraction("growth", &v))
                .transpose()?,
            budget_mult: get("algorithm", "budget_mult")
                .map(|v| parse_f64("budget_mult", &v))
                .transpose()?,
            inner: get("algorithm", "inner"),
            sample_size: get("algorithm", "sample_size")
                .map(|v| parse_u64("sample_size", &v))
                .transpose()?,
            stage_c: get("algorithm", "stage_c")
                .map(|v| parse_u64("stage_c", &v))
                .transpose()?,
            count_k: get("algorithm", "count_k")
                .map(|v| parse_u64("count_k", &v))
                .transpose()?,
            reps: get("algorithm", "reps")
                .filter(|v| v != "auto")
                .map(|v| {
                    parse_u64("reps", &v).map(|r| r as u32)
                })
                .transpose()?,
        })
    } else {
        None
    };

    let function = if pairs.iter().any(|(s, _, _, _)| s == "function") {
        Some(FunctionSpec {
            kind: require("function", "kind")?,
            n_bits: get("function", "n_bits")
                .map(|v| parse_usize("n_bits", &v))
                .transpose()?,
            theta: get("function", "theta")
                .map(|v| parse_fraction("theta", &v))
                .transpose()?,
            n: get("function", "n")
                .map(|v| parse_usize("n", &v))
                .transpose()?,
            truth_hex: get("function", "truth_hex"),
        })
    } else {
        None
    };

    let distribution = if pairs.iter().any(|(s, _, _, _)| s == "distribution") {
        let mut entries = Vec::new();
        for (s, k, v, line) in &pairs {
            if s == "distribution" && k == "entry" {
                entries.push(parse_entry(v).map_err(|msg| ConfigError::Parse {
                    line: *line,
                    msg,
                })?);
            }
        }
        Some(DistSpec {
            kind: require("distribution", "kind")?,
            alpha: get("distribution", "alpha")
                .map(|v| parse_f64("alpha", &v))
                .transpose()?,
            n: get("distribution", "n")
                .map(|v| parse_usize("n", &v))
                .transpose()?,
            entries,
        })
    } else {
        None
    };

    let sweep_sizes = match get("sweep", "sizes") {
        Some(v) => v
            .split(',')
            .map(|s| parse_usize("sizes", s.trim()))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };

    let id = get("experiment", "id").unwrap_or_else(|| {
        let alg = algorithm.as_ref().map_or("none", |a| a.name.as_str());
        format!("{}-{alg}", kind.as_str())
    });

    let config = ExperimentConfig {
        kind,
        id,
        seed,
        trials,
        exact,
        inner_reps,
        out_dir,
        algorithm,
        function,
        distribution,
        sweep_sizes,
        distinguish_n: get("distinguish", "n")
            .map(|v| parse_usize("n", &v))
            .transpose()?
            .unwrap_or(0),
        distinguish_m: get("distinguish", "m")
            .map(|v| parse_usize("m", &v))
            .transpose()?
            .unwrap_or(0),
        certify_scope: get("certify", "scope").unwrap_or("exhaustive".into()),
        certify_inputs: get("certify", "inputs")
            .map(|v| parse_u64("inputs", &v))
            .transpose()?
            .unwrap_or(1000),
        echo: text.to_string(),
    };
    config.validate()?;
    Ok(config)
}

impl ExperimentConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::BadValue {
                key: "trials".into(),
                msg: "at least one trial is required".into(),
            });
        }
        if self.inner_reps == 0 {
            return Err(ConfigError::BadValue {
                key: "inner_reps".into(),
                msg: "at least one inner repetition is required".into(),
            });
        }
        match self.kind {
            ExperimentKind::Run | ExperimentKind::Sweep | ExperimentKind::Certify => {
                if self.algorithm.is_none() {
                    return Err(ConfigError::Invalid(
                        "this experiment kind needs an [algorithm] section".into(),
                    ));
                }
                if self.function.is_none() || self.distribution.is_none() {
                    return Err(ConfigError::Invalid(
                        "this experiment kind needs [function] and [distribution] sections".into(),
                    ));
                }
            }
            ExperimentKind::VerifyBounds => {
                if self.function.is_none() || self.distribution.is_none() {
                    return Err(ConfigError::Invalid(
                        "verify-bounds needs [function] and [distribution] sections".into(),
                    ));
                }
            }
            ExperimentKind::Distinguish => {
                if self.distinguish_n == 0 || self.distinguish_m == 0 {
                    return Err(ConfigError::Invalid(
                        "distinguish needs a [distinguish] section with n and m".into(),
                    ));
                }
                if self.distinguish_m > 1 << self.distinguish_n {
                    return Err(ConfigError::Invalid(
                        "query budget m cannot exceed the 2^n block count".into(),
                    ));
                }
            }
        }
        if self.kind == ExperimentKind::Sweep {
            if self.sweep_sizes.len() < 3 {
                return Err(ConfigError::Invalid(
                    "a sweep needs at least 3 sizes".into(),
                ));
            }
            if let Some(f) = &self.function {
                if f.kind == "simon" || f.kind == "table" {
                    return Err(ConfigError::Invalid(
                        "sweeps cover the sized function families (or, maj, parity, threshold)"
                            .into(),
                    ));
                }
            }
        }
        // Build everything once per target arity to surface value errors
        // (such as alpha outside (0, 1/2), or a size an algorithm cannot
        // address) before anything runs.
        let arities: Vec<usize> = if self.kind == ExperimentKind::Sweep {
            self.sweep_sizes.clone()
        } else {
            vec![self.representative_arity()]
        };
        for arity in arities {
            if arity < 2 {
                return Err(ConfigError::Invalid(format!(
                    "input size {arity} is too small to measure"
                )));
            }
            if self.function.is_some() {
                let f = self.build_function(arity)?;
                if self.distribution.is_some() {
                    let d = self.build_distribution(arity)?;
                    if d.arity() != f.arity() {
                        return Err(ConfigError::Invalid(format!(
                            "function arity {} and distribution arity {} disagree",
                            f.arity(),
                            d.arity()
                        )));
                    }
                    if self.algorithm.is_some() {
                        let algo = self.build_algorithm(&f)?;
                        validate_algorithm_fit(&algo, arity)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn representative_arity(&self) -> usize {
        if let Some(f) = &self.function {
            if let Some(n) = f.n_bits {
                return n;
            }
            if f.kind == "simon" {
                if let Some(n) = f.n {
                    return n << n;
                }
            }
        }
        *self.sweep_sizes.first().unwrap_or(&8)
    }

    pub fn build_function(&self, arity: usize) -> Result<BooleanFunction, ConfigError> {
        let spec = self.function.as_ref().ok_or(ConfigError::Invalid(
            "missing [function] section".into(),
        ))?;
        match spec.kind.as_str() {
            "or" => Ok(BooleanFunction::or(arity)),
            "maj" => Ok(BooleanFunction::maj(arity)),
            "parity" => Ok(BooleanFunction::parity(arity)),
            "threshold" => {
                let (num, den) = spec.theta.unwrap_or((1, 10));
                if num == 0 || den == 0 || num >= den {
                    return Err(ConfigError::BadValue {
                        key: "theta".into(),
                        msg: "threshold fraction must lie strictly inside (0, 1)".into(),
                    });
                }
                Ok(BooleanFunction::threshold(arity, num, den))
            }
            "simon" => {
                let n = spec.n.ok_or(ConfigError::MissingKey {
                    section: "function".into(),
                    key: "n".into(),
                })?;
                if n == 0 || n > 8 {
                    return Err(ConfigError::BadValue {
                        key: "n".into(),
                        msg: "block width n must lie in 1..=8".into(),
                    });
                }
                Ok(BooleanFunction::simon(n))
            }
            "table" => {
                let hex = spec.truth_hex.as_ref().ok_or(ConfigError::MissingKey {
                    section: "function".into(),
                    key: "truth_hex".into(),
                })?;
                if arity > 20 {
                    return Err(ConfigError::BadValue {
                        key: "n_bits".into(),
                        msg: "truth tables are capped at 20 variables".into(),
                    });
                }
                let table = BitInput::from_hex(1 << arity, hex).map_err(|e| {
                    ConfigError::BadValue {
                        key: "truth_hex".into(),
                        msg: e.to_string(),
                    }
                })?;
                let words: Vec<u64> = (0..(1usize << arity))
                    .collect::<Vec<_>>()
                    .chunks(64)
                    .map(|chunk| {
                        let mut w = 0u64;
                        for (j, &v) in chunk.iter().enumerate() {
                            w |= (table.bit(v) as u64) << j;
                        }
                        w
                    })
                    .collect();
                Ok(BooleanFunction::table(arity, words))
            }
            other => Err(ConfigError::BadValue {
                key: "kind".into(),
                msg: format!("unknown function kind `{other}`"),
            }),
        }
    }

    pub fn build_distribution(&self, arity: usize) -> Result<InputDistribution, ConfigError> {
        let spec = self.distribution.as_ref().ok_or(ConfigError::Invalid(
            "missing [distribution] section".into(),
        ))?;
        match spec.kind.as_str() {
            "uniform" => Ok(InputDistribution::uniform(arity)),
            "or-alpha" => {
                let alpha = spec.alpha.ok_or(ConfigError::MissingKey {
                    section: "distribution".into(),
                    key: "alpha".into(),
                })?;
                InputDistribution::or_alpha(arity, alpha).map_err(|e| ConfigError::BadValue {
                    key: "alpha".into(),
                    msg: e.to_string(),
                })
            }
            "simon-d1" | "simon-d2" => {
                let n = spec
                    .n
                    .or(self.function.as_ref().and_then(|f| f.n))
                    .ok_or(ConfigError::MissingKey {
                        section: "distribution".into(),
                        key: "n".into(),
                    })?;
                Ok(if spec.kind == "simon-d1" {
                    InputDistribution::simon_d1(n)
                } else {
                    InputDistribution::simon_d2(n)
                })
            }
            "table" => {
                let entries: Result<Vec<(BitInput, f64)>, ConfigError> = spec
                    .entries
                    .iter()
                    .map(|(bits, hex, p)| {
                        BitInput::from_hex(*bits, hex)
                            .map(|x| (x, *p))
                            .map_err(|e| ConfigError::BadValue {
                                key: "entry".into(),
                                msg: e.to_string(),
                            })
                    })
                    .collect();
                InputDistribution::table(entries?).map_err(|e| ConfigError::BadValue {
                    key: "entry".into(),
                    msg: e.to_string(),
                })
            }
            other => Err(ConfigError::BadValue {
                key: "kind".into(),
                msg: format!("unknown distribution kind `{other}`"),
            }),
        }
    }

    pub fn build_algorithm(&self, f: &BooleanFunction) -> Result<Algorithm, ConfigError> {
        let spec = self.algorithm.as_ref().ok_or(ConfigError::Invalid(
            "missing [algorithm] section".into(),
        ))?;
        match spec.name.as_str() {
            "full-count" => Ok(Algorithm::FullCount(f.clone())),
            "threshold-sampler" => {
                let defaults = ThresholdParams::default();
                Ok(Algorithm::ThresholdSampler(ThresholdParams {
                    theta: spec.theta.unwrap_or(defaults.theta),
                    batch_scale: spec.batch_scale.unwrap_or(defaults.batch_scale),
                    start_i: spec.start_i.unwrap_or(defaults.start_i),
                }))
            }
            "simon-zero-error" => Ok(Algorithm::SimonZeroError {
                rounds_per_n: spec.rounds_per_n.unwrap_or(22),
            }),
            "grover-or" => {
                let defaults = GroverParams::default();
                Ok(Algorithm::GroverOr(GroverParams {
                    growth: spec.growth.unwrap_or(defaults.growth),
                    budget_mult: spec.budget_mult.unwrap_or(defaults.budget_mult),
                }))
            }
            "classical-or-sampler" => Ok(Algorithm::ClassicalOrSampler),
            "parity-exact-quantum" => Ok(Algorithm::ParityExactQuantum),
            "parity-third-wrapper" => Ok(Algorithm::ParityThirdWrapper),
            "parity-self-reduce" => {
                let inner = match spec.inner.as_deref() {
                    Some("parity-exact-quantum") => ParityInner::Exact,
                    Some("parity-third-wrapper") | None => ParityInner::ThirdWrapper,
                    Some(other) => {
                        return Err(ConfigError::BadValue {
                            key: "inner".into(),
                            msg: format!("unknown inner algorithm `{other}`"),
                        })
                    }
                };
                Ok(Algorithm::ParitySelfReduce { inner })
            }
            "classical-majority-sampler" => {
                let sample_size = spec.sample_size.ok_or(ConfigError::MissingKey {
                    section: "algorithm".into(),
                    key: "sample_size".into(),
                })?;
                Ok(Algorithm::ClassicalMajoritySampler { sample_size })
            }
            "majority-avg" => {
                let defaults = MajorityParams::default();
                Ok(Algorithm::MajorityAvg(MajorityParams {
                    stage_c: spec.stage_c.unwrap_or(defaults.stage_c),
                    count_k: spec.count_k.unwrap_or(defaults.count_k),
                    reps: spec.reps,
                }))
            }
            other => Err(ConfigError::BadValue {
                key: "name".into(),
                msg: format!("unknown algorithm `{other}`"),
            }),
        }
    }
}

/// Size constraints an algorithm imposes on its inputs.
fn validate_algorithm_fit(algo: &Algorithm, arity: usize) -> Result<(), ConfigError> {
    match algo {
        Algorithm::GroverOr(_) | Algorithm::MajorityAvg(_) => {
            if !arity.is_power_of_two() {
                return Err(ConfigError::Invalid(format!(
                    "{} needs a power-of-two input size, got {arity}",
                    algo.name()
                )));
            }
        }
        Algorithm::ClassicalMajoritySampler { sample_size } if *sample_size > arity as u64 => {
            return Err(ConfigError::Invalid(format!(
                "sample_size {sample_size} exceeds the input size {arity}"
            )));
        }
        _ => {}
    }
    Ok(())
}

fn parse_u64(key: &str, v: &str) -> Result<u64, ConfigError> {
    v.parse().map_err(|_| ConfigError::BadValue {
        key: key.into(),
        msg: format!("`{v}` is not a non-negative integer"),
    })
}

fn parse_usize(key: &str, v: &str) -> Result<usize, ConfigError> {
    v.parse().map_err(|_| ConfigError::BadValue {
        key: key.into(),
        msg: format!("`{v}` is not a non-negative integer"),
    })
}

fn parse_f64(key: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse().map_err(|_| ConfigError::BadValue {
        key: key.into(),
        msg: format!("`{v}` is not a number"),
    })
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(ConfigError::BadValue {
            key: key.into(),
            msg: format!("`{v}` is not true/false"),
        }),
    }
}

fn parse_fraction(key: &str, v: &str) -> Result<(u64, u64), ConfigError> {
    let (num, den) = v.split_once('/').ok_or(ConfigError::BadValue {
        key: key.into(),
        msg: format!("`{v}` is not of the form a/b"),
    })?;
    Ok((
        parse_u64(key, num.trim())?,
        parse_u64(key, den.trim())?,
    ))
}

/// `N:hex@pmf`.
fn parse_entry(v: &str) -> Result<(usize, String, f64), String> {
    let (head, p) = v
        .rsplit_once('@')
        .ok_or("entry must look like N:hex@pmf")?;
    let (n, hex) = head.split_once(':').ok_or("entry must look like N:hex@pmf")?;
    let n: usize = n.trim().parse().map_err(|_| "bad bit count")?;
    let p: f64 = p.trim().parse().map_err(|_| "bad probability")?;
    Ok((n, hex.trim().to_string(), p))
}
