//! `biharm`: curvature of implicit surfaces and intersection curves, with
//! classification and numerical verification of proper biharmonic circles
//! on quadrics and surfaces of revolution.
//!
//! Machine-readable JSON goes to standard output, diagnostics to standard
//! error. Exit codes: 0 success, 1 domain or precondition failure, 2
//! malformed arguments.

mod commands;
mod json;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use biharm_core::Error;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "biharm", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a quadric carries proper biharmonic curves.
    ///
    /// Prints the classification verdict with the cut level and circle
    /// geometry when the curves exist, or the reason they cannot.
    Classify {
        /// Surface specification, e.g. `quadric-center a=1 b=1 c=2 xi=1 zeta=1`.
        #[arg(required = true, num_args = 1.., value_name = "SPEC")]
        spec: Vec<String>,
    },

    /// Curvature at a point: Gaussian K of one surface, or the full
    /// curvature sample of the intersection curve when --second is given.
    Curvature {
        /// Evaluation point as `x,y,z`.
        #[arg(long, value_name = "X,Y,Z")]
        point: String,

        /// Second surface specification, quoted as one argument.
        #[arg(long, value_name = "SPEC")]
        second: Option<String>,

        /// First surface specification.
        #[arg(required = true, num_args = 1.., value_name = "SPEC")]
        spec: Vec<String>,
    },

    /// Trace the intersection curve {F = 0, G = 0} and report how constant
    /// the squared geodesic curvature stays along it.
    Trace {
        /// First surface specification, quoted as one argument.
        #[arg(long, value_name = "SPEC")]
        f: String,

        /// Second surface specification, quoted as one argument.
        #[arg(long, value_name = "SPEC")]
        g: String,

        /// Starting guess as `x,y,z`; it is projected onto the curve first.
        #[arg(long, value_name = "X,Y,Z")]
        start: String,

        /// Arclength step between stored samples.
        #[arg(long, value_name = "LENGTH")]
        step: f64,

        /// Samples to trace before giving up on closure.
        #[arg(long, value_name = "N")]
        max_steps: usize,

        /// Write the per-sample table to this CSV file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },

    /// Solve for the height of the biharmonic parallel of a superquadric.
    SolveParallel {
        /// Parameters as `n=<integer> c=<real>`.
        #[arg(required = true, num_args = 1.., value_name = "KEY=VALUE")]
        args: Vec<String>,
    },

    /// Tabulate the profile curve whose parallels are all biharmonic.
    Profile {
        /// Parameters as `c1=<real> c2=<real> rho-min=<real> rho-max=<real>
        /// samples=<integer>`.
        #[arg(required = true, num_args = 1.., value_name = "KEY=VALUE")]
        args: Vec<String>,

        /// Write the per-radius table to this CSV file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },

    /// Run a named verification suite and print one pass/fail entry per
    /// check.
    Verify {
        /// One of formula-crosscheck, fd-oracle, classification-grid,
        /// n1-consistency.
        scenario: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(
                Error::Parse { .. } | Error::DegreeCap { .. } | Error::UnsupportedSurface { .. },
            ) => ExitCode::from(2),
            _ => ExitCode::from(1),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { spec } => commands::classify(&spec.join(" ")),
        Command::Curvature {
            point,
            second,
            spec,
        } => commands::curvature(&point, second.as_deref(), &spec.join(" ")),
        Command::Trace {
            f,
            g,
            start,
            step,
            max_steps,
            csv,
        } => commands::trace_curve(&f, &g, &start, step, max_steps, csv.as_deref()),
        Command::SolveParallel { args } => commands::solve_parallel(&args),
        Command::Profile { args, csv } => commands::profile(&args, csv.as_deref()),
        Command::Verify { scenario } => verify::run(&scenario),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
