mod commands;
mod error;
mod output;
mod sweep;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rho_lattice_core::{InvolutionKind, DEFAULT_TOLERANCE};

use crate::commands::SumKind;
use crate::error::{CliError, CliResult};
use crate::output::Format;
use crate::sweep::{IntRange, SweepConfig, What};

/// Equivariant rho-invariants, cotangent sums and instanton gradings.
///
/// Exit codes: 0 success, 1 verification failure, 2 domain error,
/// 3 internal consistency failure, 4 i/o error.
#[derive(Debug, Parser)]
#[command(name = "rho-lattice", version, about, long_about)]
struct Cli {
    /// Output format (default: table; sweeps pick csv or json lines from the file name).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest accepted gap between the float and exact routes.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, allow_hyphen_values = true)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rho-invariant of L(p,q) for a U(1) representation and an involution.
    #[command(allow_negative_numbers = true)]
    LensRho {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        /// Representation index l (taken mod p).
        #[arg(short = 'l', long = "ell")]
        ell: i64,
        /// A, B or Bprime.
        #[arg(long)]
        involution: InvolutionKind,
    },
    /// One of the cotangent sums, exactly and in floating point.
    ///
    /// delta and delta-tau take -p -q -l; dedekind-D takes -p -b;
    /// lawson-N takes -q, -b (the value 2b) and an even -l.
    #[command(allow_negative_numbers = true)]
    Sums {
        #[arg(value_enum)]
        kind: SumKind,
        #[arg(short)]
        p: Option<i64>,
        #[arg(short)]
        q: Option<i64>,
        #[arg(short = 'l', long = "ell")]
        ell: Option<i64>,
        #[arg(short)]
        b: Option<i64>,
    },
    /// Representations, gradings and graded ranks for Sigma(2,p,q) and T(p,q).
    Floer {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        /// Same as --format table.
        #[arg(long)]
        table: bool,
    },
    /// Evaluate a family over parameter ranges `a:b[:step]` into a file.
    Sweep {
        #[arg(long, value_enum)]
        what: What,
        #[arg(short)]
        p: IntRange,
        /// Defaults to 1..p-1 (for floer: the -p range).
        #[arg(short)]
        q: Option<IntRange>,
        /// Second argument of dedekind-D and lawson-N.
        #[arg(short)]
        b: Option<IntRange>,
        #[arg(short = 'l', long = "ell")]
        ell: Option<IntRange>,
        /// Keep only even l.
        #[arg(long)]
        even_ell: bool,
        /// Restrict lens sweeps to one involution.
        #[arg(long)]
        involution: Option<InvolutionKind>,
        /// Which sum a sums sweep evaluates.
        #[arg(long, value_enum, default_value = "delta-tau")]
        sum: SumKind,
        /// Worker threads.
        #[arg(long, env = "RHO_LATTICE_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Keep rows already in the output file and compute only missing ones.
        #[arg(long)]
        skip_existing: bool,
    },
    /// Run the cross-route invariant battery for all parameters up to max-p.
    Verify {
        #[arg(long, default_value_t = 51)]
        max_p: i64,
    },
}

fn run(cli: Cli, out: &mut impl Write) -> CliResult<()> {
    let tol = cli.tolerance;
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::domain(format!("tolerance must be finite and non-negative, got {tol}")));
    }
    let format = cli.format.unwrap_or(Format::Table);
    match cli.command {
        Command::LensRho { p, q, ell, involution } => commands::lens_rho(p, q, ell, involution, tol)?.render(format, out),
        Command::Sums { kind, p, q, ell, b } => commands::sums(kind, p, q, ell, b, tol)?.render(format, out),
        Command::Floer { p, q, table } => {
            let format = if table { Format::Table } else { format };
            commands::floer(p, q, tol)?.render(format, out)
        }
        Command::Sweep { what, p, q, b, ell, even_ell, involution, sum, jobs, out: path, skip_existing } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let cfg = SweepConfig {
                what,
                p,
                q,
                b,
                ell,
                even_ell,
                involution,
                sum,
                jobs,
                out: path,
                skip_existing,
                format: cli.format,
                tolerance: tol,
            };
            let computed = sweep::sweep(&cfg)?;
            eprintln!("computed {computed} rows into {}", cfg.out.display());
            Ok(())
        }
        Command::Verify { max_p } => verify::run(max_p, tol, format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
