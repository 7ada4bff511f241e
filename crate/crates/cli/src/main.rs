//! `kappa-hopf verify <suite>`: runs a verification suite and prints its
//! report. Exit status 0 when every check passes, 1 when any fails, 2 on a
//! configuration or model error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kappa_hopf::hopf::Mode;
use kappa_hopf::suite::{exit_status, run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "kappa-hopf", version, about = "Symbolic verification of the kappa-deformed Galilei algebra and group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite: algebra, group, casimirs, bicross, cocommutator,
    /// rmatrix, duality, spacetime, projrep or all.
    Verify {
        suite: String,
        /// Truncation order in h.
        #[arg(long, default_value_t = 4)]
        order: u32,
        /// Monomial degree bound for the duality sweeps.
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// Model file replacing the shipped file of the same name, or
        /// adding declarations; may be repeated.
        #[arg(long = "model", value_name = "FILE")]
        models: Vec<PathBuf>,
        /// Also write the report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Seed of the random-substitution pre-filter.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Formal,
    Series,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Formal => Mode::Formal,
            ModeArg::Series => Mode::Series,
            ModeArg::Both => Mode::Both,
        }
    }
}

fn read_model(path: &Path) -> Result<(String, String), String> {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| format!("{}: not a file name", path.display()))?
        .to_string();
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((name, text))
}

fn main() -> ExitCode {
    let Command::Verify { suite, order, degree, mode, models, json, seed } = Cli::parse().command;
    let models = match models.iter().map(|p| read_model(p)).collect::<Result<Vec<_>, _>>() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = SuiteConfig { suite, order, degree, mode: mode.into(), models, json, seed };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.to_text());
    if let Some(path) = &config.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(exit_status(&report) as u8)
}
