//! `qkt` command-line front end: single runs, sweeps, classical portraits
//! and spectra, with fixed-precision, reproducible CSV output.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qkt_core::observables::{Window, DEFAULT_PAD};

use crate::config::{layered, max_qubits_from_env, RunOptions, SweepOptions};
pub use crate::error::{CliError, Result};
use crate::error::{EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "qkt", version, about = "Quantum kicked top simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one trajectory and write per-kick observables
    Run {
        /// JSON config file; flags override its values
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file (stdout when omitted)
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        options: RunOptions,
    },
    /// Run a trajectory per parameter value and summarize
    Sweep {
        /// JSON config file; flags override its values
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for point files and summary.csv
        #[arg(long, short)]
        out: PathBuf,
        #[command(flatten)]
        options: SweepOptions,
    },
    /// Classical phase portrait
    Portrait {
        #[arg(long, default_value_t = 3.0)]
        k: f64,
        /// Seeds per axis (grid x grid trajectories)
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Spectrum of one column of a trajectory CSV
    Spectrum {
        /// Input CSV
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value = "jz")]
        column: String,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PAD)]
        pad: usize,
        /// none or hann
        #[arg(long, default_value = "none")]
        window: String,
    },
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Run {
            config,
            out,
            options,
        } => {
            let options = layered(options, config.as_ref(), RunOptions::over)?;
            let cfg = options.resolve(max_qubits_from_env()?)?;
            commands::run(&cfg, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Sweep {
            config,
            out,
            options,
        } => {
            let options = layered(options, config.as_ref(), SweepOptions::over)?;
            let cfg = options.resolve(max_qubits_from_env()?)?;
            let report = commands::sweep(&cfg, &out)?;
            let failed: Vec<_> = report.rows.iter().filter(|r| r.outcome.is_err()).collect();
            for row in &failed {
                if let Err(msg) = &row.outcome {
                    eprintln!("qkt: sweep point {}: {msg}", row.value);
                }
            }
            if failed.is_empty() {
                Ok(EXIT_OK)
            } else {
                Err(CliError::SweepFailed {
                    failed: failed.len(),
                    total: report.rows.len(),
                    code: report.exit_code,
                })
            }
        }
        Command::Portrait {
            k,
            grid,
            iters,
            parallelism,
            out,
        } => {
            if parallelism < 1 {
                return Err(CliError::usage("--parallelism must be at least 1"));
            }
            commands::portrait(k, grid, iters, &out, parallelism)
                .map_err(|e| match e {
                    CliError::Core(qkt_core::QktError::InvalidInput(m)) => CliError::Usage(m),
                    other => other,
                })?;
            Ok(EXIT_OK)
        }
        Command::Spectrum {
            input,
            column,
            out,
            pad,
            window,
        } => {
            let window = Window::parse(&window)
                .ok_or_else(|| CliError::usage(format!("--window: expected none or hann, got {window:?}")))?;
            let result = commands::spectrum_cmd(&input, &column, &out, pad, window)?;
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{}", commands::spectrum_report(&result))
                .map_err(|e| CliError::io("<stdout>", e))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qkt: {e}");
            let code = e.exit_code();
            if code == EXIT_OK {
                EXIT_FAILURE
            } else {
                code
            }
        }
    }
}
