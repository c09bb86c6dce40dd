//! Command-line front end: configuration parsing and the run / verify /
//! report commands.

mod commands;
mod config;

pub use commands::{
    cmd_report, cmd_run, cmd_verify, CliOverrides, EXIT_OK, EXIT_RUNTIME, EXIT_VALIDATION,
    EXIT_VERIFY_FAIL,
};
pub use config::{parse_config, ConfigError, ExperimentConfig, ExperimentKind, SCHEMA_ID};
