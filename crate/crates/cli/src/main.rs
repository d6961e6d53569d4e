use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use behavcon_cli::{exit, load_model, CliError, Outcome};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "behavcon", version, about = "Assume-guarantee contracts for linear behaviours")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write the command's artifact (or the report) to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Does SYSTEM implement CONTRACT?
    CheckImplements { system: PathBuf, contract: PathBuf, #[command(flatten)] output: Output },
    /// Does C1 refine C2?
    CheckRefines { c1: PathBuf, c2: PathBuf, #[command(flatten)] output: Output },
    /// Necessary consistency condition.
    CheckConsistency { contract: PathBuf, #[command(flatten)] output: Output },
    /// Is ENVIRONMENT compatible with CONTRACT?
    CheckCompatible { environment: PathBuf, contract: PathBuf, #[command(flatten)] output: Output },
    /// Conjunction of two contracts.
    Conjunction { c1: PathBuf, c2: PathBuf, #[command(flatten)] output: Output },
    /// Input projection of guarantees.
    ProjectInput { guarantees: PathBuf, #[command(flatten)] output: Output },
    /// Eliminate latent variables of an environment.
    EliminateLatent { environment: PathBuf, #[command(flatten)] output: Output },
    /// Simulate the leader/follower scenario and check the spacing-error decay.
    Simulate {
        scenario: PathBuf,
        /// Decay tolerance relative to max(|eps0|, 1).
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Command) -> Result<u8, CliError> {
    let (outcome, output, csv) = match cmd {
        Command::CheckImplements { system, contract, output } => {
            (behavcon_cli::check_implements(&load_model(&system)?, &load_model(&contract)?)?, output, false)
        }
        Command::CheckRefines { c1, c2, output } => {
            (behavcon_cli::check_refines(&load_model(&c1)?, &load_model(&c2)?)?, output, false)
        }
        Command::CheckConsistency { contract, output } => {
            (behavcon_cli::check_consistency(&load_model(&contract)?)?, output, false)
        }
        Command::CheckCompatible { environment, contract, output } => {
            (behavcon_cli::check_compatible(&load_model(&environment)?, &load_model(&contract)?)?, output, false)
        }
        Command::Conjunction { c1, c2, output } => {
            (behavcon_cli::conjoin(&load_model(&c1)?, &load_model(&c2)?)?, output, false)
        }
        Command::ProjectInput { guarantees, output } => {
            (behavcon_cli::project_input(&load_model(&guarantees)?)?, output, false)
        }
        Command::EliminateLatent { environment, output } => {
            (behavcon_cli::eliminate_latent(&load_model(&environment)?)?, output, false)
        }
        Command::Simulate { scenario, tol, output } => {
            (behavcon_cli::run_simulation(&load_model(&scenario)?, tol)?, output, true)
        }
    };
    emit(&outcome, &output, csv)?;
    Ok(outcome.code)
}

fn emit(outcome: &Outcome, output: &Output, csv: bool) -> Result<(), CliError> {
    let report = if output.json { outcome.report.to_json() + "\n" } else { outcome.report.to_string() };
    match (&output.out, &outcome.artifact) {
        (Some(path), Some(artifact)) => write_file(path, artifact)?,
        (Some(path), None) => write_file(path, &outcome.report.to_json())?,
        // CSV goes to stdout when there is nowhere else for it.
        (None, Some(artifact)) if csv => {
            print!("{artifact}");
            eprint!("{report}");
            return Ok(());
        }
        (None, _) => {}
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(report.as_bytes());
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}
