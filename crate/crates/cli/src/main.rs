use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use nlw_cli::sweep::parse_value;
use nlw_cli::{load_config, post, run, sweep, CliError, Scenario};

/// Radial defocusing cubic wave equation: runs, sweeps and post-processing.
#[derive(Parser)]
#[command(name = "nlw", version)]
struct Cli {
    /// Root directory for run outputs.
    #[arg(long, env = "NLW_OUTPUT_ROOT", default_value = "runs", global = true)]
    output_root: PathBuf,
    /// Reject unknown configuration keys (`--strict false` only warns).
    #[arg(long, default_value_t = true, action = ArgAction::Set, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario.
    Run { config: PathBuf },
    /// Run a scenario once per value of a dotted parameter path.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        axis: String,
        /// Comma-separated TOML literals.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        values: Vec<String>,
    },
    /// Recompute the monitors of a run from its checkpoints.
    Diagnose { run_dir: PathBuf },
    /// Hyperbolic transform, native evolution and consistency checks.
    Hyperbolic { run_dir: PathBuf },
    /// Scattering diagnostics of a stored run.
    Scatter { run_dir: PathBuf },
}

fn load(path: &Path, strict: bool) -> Result<Scenario, CliError> {
    let (sc, ignored) = load_config(path, strict)?;
    for key in ignored {
        eprintln!("warning: ignoring unknown key `{key}`");
    }
    Ok(sc)
}

fn print<S: serde::Serialize>(value: &S) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Run { config } => {
            let sc = load(config, cli.strict)?;
            let a = run(&sc, &cli.output_root)?;
            print(&a.manifest)?;
            Ok(a.ok())
        }
        Command::Sweep {
            config,
            axis,
            values,
        } => {
            let sc = load(config, cli.strict)?;
            let values: Vec<_> = values.iter().map(|v| parse_value(v)).collect();
            let res = sweep(&sc, axis, &values, &cli.output_root)?;
            print(&res.rows)?;
            eprintln!("summary: {}", res.summary.display());
            Ok(res.runs.iter().all(|r| r.ok()))
        }
        Command::Diagnose { run_dir } => print(&post::diagnose(run_dir)?).map(|_| true),
        Command::Hyperbolic { run_dir } => print(&post::hyperbolic(run_dir)?).map(|_| true),
        Command::Scatter { run_dir } => print(&post::scatter(run_dir)?).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
