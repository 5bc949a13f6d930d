use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use phspec::morse::{self, GridSpec};
use phspec::report::{self, Settings};
use phspec::{io, selftest, Error};

#[derive(Parser)]
#[command(
    name = "phspec",
    version,
    about = "Pseudo-Hermiticity analysis of complex matrices"
)]
struct Cli {
    /// Base tolerance for clustering, pairing and relative residuals.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report destination (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Halve every tolerance.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral classification, intertwiner certificate and symmetry residuals.
    Analyze { matrix_file: PathBuf },
    /// Similarity transform to a real matrix.
    Realform { matrix_file: PathBuf },
    /// Complex Morse Hamiltonian on a periodic Fourier grid.
    #[command(allow_negative_numbers = true)]
    Morse {
        a: f64,
        b: f64,
        c: f64,
        #[arg(default_value_t = morse::DEFAULT_N)]
        n: usize,
        #[arg(default_value_t = morse::DEFAULT_X_MIN)]
        x_min: f64,
        #[arg(default_value_t = morse::DEFAULT_X_MAX)]
        x_max: f64,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn run(cli: &Cli) -> phspec::Result<String> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Error::Parse(format!(
            "--tol must be a positive number, got {}",
            cli.tol
        )));
    }
    let settings = Settings {
        tol: cli.tol,
        seed: cli.seed,
        strict: cli.strict,
    };
    Ok(match &cli.command {
        Command::Analyze { matrix_file } => {
            report::to_json(&report::analyze(&io::read_matrix(matrix_file)?, &settings)?)
        }
        Command::Realform { matrix_file } => report::to_json(&report::realform_report(
            &io::read_matrix(matrix_file)?,
            &settings,
        )?),
        Command::Morse {
            a,
            b,
            c,
            n,
            x_min,
            x_max,
        } => {
            let params = morse::morse_params(*a, *b, *c)?;
            let grid = GridSpec::new(*n, *x_min, *x_max)?;
            report::to_json(&report::morse_report(&params, &grid, &settings)?)
        }
        Command::Selftest => {
            let doc = selftest::run_selftest(&settings)?;
            for c in &doc.criteria {
                eprintln!("{}", c.summary_line());
            }
            report::to_json(&doc)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let written = run(&cli).and_then(|text| match &cli.output {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(Error::from),
    });
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
