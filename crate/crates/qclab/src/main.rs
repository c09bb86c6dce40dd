use clap::{Parser, Subcommand};
use qclab::cli::{cmd_report, cmd_run, cmd_verify, CliOverrides, EXIT_VALIDATION};
use std::path::PathBuf;
use std::process::ExitCode;

/// Average-case query-cost lab for classical and quantum oracle
/// algorithms.
#[derive(Parser)]
#[command(name = "qclab", version)]
struct Cli {
    /// Master seed; overrides the configuration file's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory; overrides the configuration file's choice.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Force exact support enumeration instead of Monte Carlo.
    #[arg(long, global = true)]
    exact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the experiment described by a configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run a named verification suite
    /// (simon | or-gap | majority | parity | bounds | all).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Merge result CSV files in a directory into plot-ready data.
    Report { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            eprintln!("could not configure {jobs} worker threads");
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    }
    let code = match &cli.command {
        Command::Run { config } => cmd_run(
            config,
            &CliOverrides {
                seed: cli.seed,
                out: cli.out.clone(),
                exact: cli.exact,
            },
        ),
        Command::Verify { suite } => {
            cmd_verify(suite, cli.seed.unwrap_or(1), cli.out.as_deref())
        }
        Command::Report { dir } => cmd_report(dir),
    };
    ExitCode::from(code as u8)
}
