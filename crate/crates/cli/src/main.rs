use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

#[derive(Parser, Debug)]
#[command(name = "mfkit", version, about = "Matrix factorizations of the Fermat cubic threefold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generators {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every catalog factorization (and optional extra entries).
    VerifyCatalog {
        /// JSON file with additional entries ({"name", "vars", "phi", "psi"}), or a list of them.
        #[arg(long)]
        extra: Vec<PathBuf>,
    },
    /// Partition the catalog into isomorphism classes.
    Classify {
        #[arg(long, value_enum)]
        generators: Generators,
        /// Decide every pair instead of applying the parameter rules.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Pairs audited per rule in fast mode.
        #[arg(long, default_value_t = 5)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether two presentation matrices have isomorphic cokernels.
    Equiv {
        x: PathBuf,
        y: PathBuf,
        /// Verify an explicit transformation instead of deciding.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Relations among the witness variables, one per line.
        #[arg(long, requires = "witness")]
        relations: Option<PathBuf>,
    },
    /// Reduced Gröbner basis of the ideal in a file (one generator per line).
    Gb {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        /// Comma-separated variable order; inferred from first appearance otherwise.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Reduced Gröbner basis of a Fitting ideal of a matrix.
    Fitting {
        matrix: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
    },
    /// Complete four linear forms to a 3x3 factorization of f4.
    Complete { alpha: PathBuf, beta: PathBuf, gamma: PathBuf, delta: PathBuf },
    /// Print catalog entries of a family, optionally a single parameter tuple.
    Catalog {
        #[arg(long)]
        family: String,
        /// Parameters such as "i=2,j=3,a=-1,b=-e".
        #[arg(long)]
        params: Option<String>,
    },
}

/// Successful runs either confirm (exit 0) or report a negative result (exit 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyCatalog { extra } => commands::verify_catalog(&extra),
        Command::Classify { generators, exhaustive, jobs, sample, seed } => {
            commands::classify(generators, exhaustive, jobs, sample, seed)
        }
        Command::Equiv { x, y, witness, relations } => commands::equiv(&x, &y, witness.as_deref(), relations.as_deref()),
        Command::Gb { file, order, vars } => commands::gb(&file, order, vars),
        Command::Fitting { matrix, t, order } => commands::fitting(&matrix, t, order),
        Command::Complete { alpha, beta, gamma, delta } => commands::complete([&alpha, &beta, &gamma, &delta]),
        Command::Catalog { family, params } => commands::catalog(&family, params.as_deref()),
    };
    match result {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
