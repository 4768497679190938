//! `ahg`: command-line access to the isomorphism classifier. Every
//! command prints one JSON document on standard output.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Outcome};

#[derive(Parser)]
#[command(
    name = "ahg",
    version,
    about = "Classify A-hypergeometric systems up to D-isomorphism"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Matrix {
    /// Matrix A: a file path or inline text (JSON {"A": [[..]]} or integer rows).
    #[arg(short = 'A', long = "matrix", allow_hyphen_values = true)]
    a: String,
}

#[derive(Args)]
struct Beta {
    /// Parameter β as comma-separated rationals, e.g. 1/2,-1,0.
    #[arg(short = 'b', long = "beta", allow_hyphen_values = true)]
    b: String,
}

#[derive(Args)]
struct Pair {
    #[command(flatten)]
    beta: Beta,
    /// Second parameter β′ (also accepted as -b2).
    #[arg(long = "b2", allow_hyphen_values = true)]
    b2: String,
}

#[derive(Subcommand)]
enum Command {
    /// Facets and faces of the cone over A.
    Faces(Matrix),
    /// The sets E_τ(β) for every face.
    Esets {
        #[command(flatten)]
        m: Matrix,
        #[command(flatten)]
        beta: Beta,
    },
    /// Decide whether M_A(β) and M_A(β′) are isomorphic.
    Classify {
        #[command(flatten)]
        m: Matrix,
        #[command(flatten)]
        pair: Pair,
    },
    /// Build and verify explicit isomorphism operators.
    Witness {
        #[command(flatten)]
        m: Matrix,
        #[command(flatten)]
        pair: Pair,
        /// Series truncation order for the solution check.
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
    /// Partition the integer points of a box into isomorphism classes.
    Enumerate {
        #[command(flatten)]
        m: Matrix,
        /// Ranges lo:hi per coordinate.
        #[arg(long = "box", allow_hyphen_values = true)]
        bounds: String,
        /// Rational shift added to every box point.
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<String>,
        /// Keep only points of the semigroup NA.
        #[arg(long)]
        semigroup: bool,
        /// List every member of every class.
        #[arg(long)]
        members: bool,
    },
    /// Holes of a monomial curve.
    Holes(Matrix),
    /// The b-ideal B_χ: standard pairs and prime components.
    Bideal {
        #[command(flatten)]
        m: Matrix,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Optional point to test and avoid.
        #[arg(short = 'b', long = "beta", allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// A contiguity operator of weight χ with its certificate.
    Contig {
        #[command(flatten)]
        m: Matrix,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Choose b(s) nonzero at β + χ.
        #[arg(short = 'b', long = "beta", allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Faces carrying Laurent polynomial solutions.
    Laurent {
        #[command(flatten)]
        m: Matrix,
        #[command(flatten)]
        beta: Beta,
    },
    /// Normalized volume of conv(A).
    Volume(Matrix),
    /// Run the self-check suite on A or on a seeded random matrix.
    Check {
        #[arg(short = 'A', long = "matrix", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Faces(_) => "faces",
            Command::Esets { .. } => "esets",
            Command::Classify { .. } => "classify",
            Command::Witness { .. } => "witness",
            Command::Enumerate { .. } => "enumerate",
            Command::Holes(_) => "holes",
            Command::Bideal { .. } => "bideal",
            Command::Contig { .. } => "contig",
            Command::Laurent { .. } => "laurent",
            Command::Volume(_) => "volume",
            Command::Check { .. } => "check",
        }
    }
}

fn run(command: &Command) -> Result<Outcome, CliError> {
    use commands::*;
    match command {
        Command::Faces(m) => faces(&load(&m.a)?),
        Command::Esets { m, beta } => esets(&load(&m.a)?, &beta.b),
        Command::Classify { m, pair } => classify(&load(&m.a)?, &pair.beta.b, &pair.b2),
        Command::Witness { m, pair, order } => witness(&load(&m.a)?, &pair.beta.b, &pair.b2, *order),
        Command::Enumerate {
            m,
            bounds,
            offset,
            semigroup,
            members,
        } => enumerate(&load(&m.a)?, bounds, offset.as_deref(), *semigroup, *members),
        Command::Holes(m) => holes(&load(&m.a)?),
        Command::Bideal { m, chi, b } => bideal(&load(&m.a)?, chi, b.as_deref()),
        Command::Contig { m, chi, b } => contig(&load(&m.a)?, chi, b.as_deref()),
        Command::Laurent { m, beta } => laurent(&load(&m.a)?, &beta.b),
        Command::Volume(m) => volume(&load(&m.a)?),
        Command::Check { a, seed, order } => {
            let loaded = a.as_deref().map(load).transpose()?;
            check(loaded.as_ref(), *seed, *order)
        }
    }
}

/// One compact JSON document per line; a closed pipe is not an error.
fn print(v: &serde_json::Value) {
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}

fn main() -> ExitCode {
    // `-b2` is a documented spelling of `--b2`; clap shorts are one character.
    let argv = std::env::args().map(|a| if a == "-b2" { "--b2".to_string() } else { a });
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            print(&output::error("USAGE", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = std::env::var("AHG_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Ignore failure: the pool may already exist.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli.command) {
        Ok(out) => {
            print(&output::envelope(
                cli.command.name(),
                out.input,
                out.result,
                out.diagnostics,
            ));
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            print(&output::error(e.code(), &e.to_string()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
