//! `spin-tqft`: validate algebras, evaluate partition functions, tabulate them, solve for
//! crossings and check triangulation independence.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails, 2 for unreadable
//! or invalid input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spin_tqft::solver::Field;

#[derive(Parser, Debug)]
#[command(name = "spin-tqft", version, about = "State sum and spin state sum invariants of surfaces")]
pub struct Cli {
    /// Relative tolerance for every check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for random Pachner moves and solver starts.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report to this file (`-` for standard output).
    #[arg(long, global = true, value_name = "OUT")]
    pub json: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Spin {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the algebra (and crossing, if the model has one) against its axioms.
    Validate {
        /// Model file, or inline JSON starting with `{`.
        spec: String,
    },
    /// Partition function of a closed surface of genus g.
    Partition {
        spec: String,
        #[arg(long)]
        genus: usize,
        /// Parity of the spin structure; needs a crossing.
        #[arg(long, value_enum)]
        spin: Option<Spin>,
        /// `canonical`, `bichar:<k|name>`, `solved:<k>` or a crossing file.
        #[arg(long)]
        crossing: Option<String>,
    },
    /// Partition functions over a genus range, both parities when a crossing is given.
    Table {
        spec: Option<String>,
        /// Same as the positional spec.
        #[arg(long, conflicts_with = "spec")]
        constructor: Option<String>,
        /// Inclusive range `a..b`.
        #[arg(long, default_value = "0..3")]
        genus_range: String,
        #[arg(long)]
        crossing: Option<String>,
    },
    /// Search for all crossings on a small commutative algebra.
    Solve {
        spec: String,
        #[arg(long, default_value_t = 400)]
        starts: usize,
        #[arg(long, default_value_t = 64)]
        max_solutions: usize,
        #[arg(long, default_value_t = 1e-5)]
        dedup_radius: f64,
        #[arg(long, value_enum, default_value_t = FieldArg::Real)]
        field: FieldArg,
        /// Fail unless exactly this many crossings are found.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Compare the state sum across the two-triangle torus or polygon and random Pachner moves.
    PachnerCheck {
        spec: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 10)]
        moves: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
