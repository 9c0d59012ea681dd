//! `heckeaf`: continued fractions, block factorizations and the AF-algebra
//! pipeline for Hecke eigenforms.
//!
//! Exit codes: 0 success, 2 malformed input, 3 mathematical precondition
//! failed, 4 pipeline failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "heckeaf", version, about = "AF-algebras of Hecke eigenforms via Jacobi-Perron fractions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regular continued fraction of a positive rational or real algebraic number.
    Cf {
        /// A rational `p/q` or integer. Omit when using --poly.
        value: Option<String>,
        /// Minimal polynomial, e.g. `x^2-2`.
        #[arg(long)]
        poly: Option<String>,
        /// Real root index, ascending; defaults to the largest root.
        #[arg(long)]
        root: Option<usize>,
        /// Power-basis coordinates of the element, comma separated; defaults
        /// to the generator.
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Jacobi-Perron expansion of a vector of positive field elements.
    Jpa {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        root: Option<usize>,
        /// Coordinates of each theta entry: `;` between entries, `,` between
        /// coordinates, e.g. `0,1;1,1`.
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        /// Write the Bratteli diagram: `--export dot out.dot` or `--export json out.json`.
        #[arg(long, num_args = 2, value_names = ["FORMAT", "PATH"])]
        export: Option<Vec<String>>,
        /// Levels drawn for stationary diagrams.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long)]
        json: bool,
    },
    /// Jacobi-Perron block factorization of a non-negative unimodular matrix.
    Factor {
        /// Matrix as JSON, e.g. `[[0,1],[1,1]]`, or a path to a JSON file.
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the eigenform pipeline on a fixture and report the AF-algebra.
    Af {
        fixture: PathBuf,
        /// Also run every real conjugate and compare period matrices.
        #[arg(long)]
        conjugates: bool,
        /// Write the JSON run report here (also on failure).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Cf {
            value,
            poly,
            root,
            element,
            max_steps,
            json,
        } => commands::cf(value.as_deref(), poly.as_deref(), root, element.as_deref(), max_steps, json),
        Command::Jpa {
            poly,
            root,
            theta,
            max_steps,
            export,
            levels,
            json,
        } => commands::jpa(&poly, root, &theta, max_steps, export.as_deref(), levels, json),
        Command::Factor { matrix, json } => commands::factor(&matrix, json),
        Command::Af {
            fixture,
            conjugates,
            report,
        } => commands::af(&fixture, conjugates, report.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
