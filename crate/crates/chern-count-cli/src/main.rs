//! Command-line front end for the exact singular-curve calculator.
//!
//! Four commands:
//!
//! - `formula` prints the universal polynomial for one count target;
//! - `eval` evaluates a target on a concrete surface and reports the count,
//!   the ampleness threshold, and the number of generic points;
//! - `table` prints every formula, or every value on one surface;
//! - `selftest` runs the built-in verification suite and exits nonzero if
//!   any check fails.
//!
//! Usage errors (unknown flags, missing required flags, malformed values)
//! exit with status 2; runtime failures exit with status 1 and print either
//! a plain `error:` line or, under `--format json`, a machine-readable
//! `{"error": {...}}` object on stderr.
//!
//! Set the `CHERN_COUNT_CACHE` environment variable to a JSON file path to
//! persist engine results across invocations (see [`cache`]).  The
//! `selftest` command never reads or writes the cache: its verdicts must
//! come from fresh derivations.

mod cache;
mod output;
mod surface_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chern_count_core::{CountTarget, SurfaceSpec, TwoPointEngine};

use crate::cache::CacheState;
use crate::output::Format;

/// A runtime failure: a stable machine-readable kind plus a human message.
#[derive(Clone, Debug)]
pub(crate) struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    pub(crate) fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub(crate) fn engine(e: chern_count_core::EngineError) -> Self {
        CliError::new("engine", e.to_string())
    }

    pub(crate) fn kind(&self) -> &'static str {
        self.kind
    }

    pub(crate) fn message(&self) -> &str {
        &self.message
    }
}

/// What a successfully dispatched command hands back to `main`.
struct Outcome {
    stdout: String,
    success: bool,
}

#[derive(Parser)]
#[command(
    name = "chern-count",
    version,
    about = "Exact counts of singular curves on surfaces",
    long_about = "Derives, from recursions alone, the universal formulas counting curves with one \
                  prescribed singularity (A1..A7, D4..D7, E6, E7) or one node plus one singularity \
                  (A1A1..A1A6, A1D4..A1D6, A1E6) on a compact complex surface, and evaluates them \
                  on concrete surfaces."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the universal formula for one count target.
    Formula(FormulaArgs),
    /// Evaluate a count target on a concrete surface.
    Eval(EvalArgs),
    /// Print every formula, or every value on one surface.
    Table(TableArgs),
    /// Run the built-in verification checks (exit 0 only if all pass).
    Selftest,
}

fn parse_target(s: &str) -> Result<CountTarget, String> {
    s.parse().map_err(|_| {
        format!(
            "unknown count target {s:?}: one-point targets are A1..A7, D4..D7, E6, E7; \
             node pairs are A1A1..A1A6, A1D4..A1D6, A1E6"
        )
    })
}

fn parse_bidegree(s: &str) -> Result<(u32, u32), String> {
    let err = || format!("expected two comma-separated degrees like 2,3, got {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(err)?;
    Ok((a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?))
}

#[derive(Args)]
struct FormulaArgs {
    /// Count target, e.g. D5 or A1D4.
    #[arg(long, value_parser = parse_target)]
    sing: CountTarget,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct SurfaceArgs {
    /// Surface: the plane, the product of two lines, or a custom geometry.
    #[arg(long, value_enum)]
    surface: SurfaceChoice,
    /// Curve degree d on the plane (counts curves in |O(d)|).
    #[arg(long, required_if_eq("surface", "p2"), conflicts_with_all = ["bidegree", "geometry_file"])]
    degree: Option<u32>,
    /// Bidegree a,b on the product of lines (counts curves in |O(a, b)|).
    #[arg(long, value_parser = parse_bidegree, required_if_eq("surface", "p1xp1"), conflicts_with = "geometry_file")]
    bidegree: Option<(u32, u32)>,
    /// JSON file describing the surface (see the surface-file schema).
    #[arg(long, required_if_eq("surface", "custom"))]
    geometry_file: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Count target, e.g. A1 or A1D4.
    #[arg(long, value_parser = parse_target)]
    sing: CountTarget,
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Optional surface to evaluate every formula on.
    #[arg(long, value_enum)]
    surface: Option<SurfaceChoice>,
    /// Curve degree d on the plane.
    #[arg(long, requires = "surface", required_if_eq("surface", "p2"), conflicts_with_all = ["bidegree", "geometry_file"])]
    degree: Option<u32>,
    /// Bidegree a,b on the product of lines.
    #[arg(long, value_parser = parse_bidegree, requires = "surface", required_if_eq("surface", "p1xp1"), conflicts_with = "geometry_file")]
    bidegree: Option<(u32, u32)>,
    /// JSON file describing the surface.
    #[arg(long, requires = "surface", required_if_eq("surface", "custom"))]
    geometry_file: Option<PathBuf>,
    /// Keep only targets of total codimension at most this bound.
    #[arg(long)]
    max_codim: Option<u32>,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SurfaceChoice {
    /// The projective plane with L = O(degree).
    P2,
    /// The product of two lines with L = O(a, b).
    P1xp1,
    /// Chern numbers from a JSON file.
    Custom,
}

fn build_surface(
    choice: SurfaceChoice,
    degree: Option<u32>,
    bidegree: Option<(u32, u32)>,
    geometry_file: Option<&PathBuf>,
) -> Result<SurfaceSpec, CliError> {
    match choice {
        SurfaceChoice::P2 => Ok(SurfaceSpec::projective_plane(degree.expect("enforced by the parser"))),
        SurfaceChoice::P1xp1 => {
            let (a, b) = bidegree.expect("enforced by the parser");
            Ok(SurfaceSpec::p1_cross_p1(a, b))
        }
        SurfaceChoice::Custom => surface_file::load(geometry_file.expect("enforced by the parser")),
    }
}

/// Seed an engine from the cache (if configured), run `work` on it, then
/// write the grown memo back.
fn with_cached_engine(
    work: impl FnOnce(&mut TwoPointEngine) -> Result<String, CliError>,
) -> Result<String, CliError> {
    let cache = CacheState::from_env();
    let mut engine = TwoPointEngine::new();
    cache.seed(&mut engine)?;
    let out = work(&mut engine)?;
    cache.store(&mut engine)?;
    Ok(out)
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Formula(args) => {
            let stdout = with_cached_engine(|engine| output::formula(engine, args.sing, args.format))?;
            Ok(Outcome { stdout, success: true })
        }
        Command::Eval(args) => {
            let surface = build_surface(
                args.surface.surface,
                args.surface.degree,
                args.surface.bidegree,
                args.surface.geometry_file.as_ref(),
            )?;
            let stdout =
                with_cached_engine(|engine| output::eval(engine, args.sing, &surface, args.format))?;
            Ok(Outcome { stdout, success: true })
        }
        Command::Table(args) => {
            let surface = match args.surface {
                Some(choice) => Some(build_surface(
                    choice,
                    args.degree,
                    args.bidegree,
                    args.geometry_file.as_ref(),
                )?),
                None => None,
            };
            let stdout = with_cached_engine(|engine| {
                output::table(engine, surface.as_ref(), args.max_codim, args.format)
            })?;
            Ok(Outcome { stdout, success: true })
        }
        Command::Selftest => {
            let (stdout, success) = output::selftest();
            Ok(Outcome { stdout, success })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match &cli.command {
        Command::Formula(args) => args.format,
        Command::Eval(args) => args.format,
        Command::Table(args) => args.format,
        Command::Selftest => Format::Text,
    };
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprint!("{}", output::error_text(format, &err));
            ExitCode::FAILURE
        }
    }
}
