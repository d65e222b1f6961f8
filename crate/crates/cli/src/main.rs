use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relsync::commands::{self, SweepArgs};
use relsync::config::{
    parse_length, parse_positive, parse_velocity, BasisChoice, CommonArgs, ConventionChoice,
    Format, ScenarioConfig,
};
use relsync::{CliError, Report, EXIT_ASSERTION_FAILED, EXIT_ERROR, EXIT_PASS};
use relsync_core::Velocity;

#[derive(Debug, Parser)]
#[command(
    name = "relsync",
    version,
    about = "Light round trips, clock conventions and Lorentz group audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forth/back light signal between two co-moving stations.
    Roundtrip {
        #[arg(long, value_parser = parse_velocity, allow_hyphen_values = true)]
        eps: Velocity,
        #[arg(long, default_value_t = 1.0, value_parser = parse_length)]
        length: f64,
        #[arg(long, value_enum, default_value_t = ConventionChoice::Both)]
        convention: ConventionChoice,
        #[arg(long, value_enum, default_value_t = BasisChoice::Both)]
        basis: BasisChoice,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write the Reichenbach parameter over a velocity grid to a CSV file.
    KappaSweep {
        #[arg(long, value_parser = parse_velocity, allow_hyphen_values = true)]
        from: Velocity,
        #[arg(long, value_parser = parse_velocity, allow_hyphen_values = true)]
        to: Velocity,
        #[arg(long, value_parser = parse_positive)]
        step: f64,
        /// CSV destination; the report goes to standard output.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Randomized group-law batteries for the (ε, l) family.
    GroupAudit {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare Einstein and Poincaré observables over a grid.
    Equivalence {
        /// Velocity values (comma separated); combined with every --length.
        #[arg(long, value_parser = parse_velocity, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Vec<Velocity>,
        #[arg(long, value_parser = parse_length, value_delimiter = ',')]
        length: Vec<f64>,
        /// Additional seeded random (length, eps) points.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure a moving rod under one or both conventions.
    Rod {
        #[arg(long, value_parser = parse_velocity, allow_hyphen_values = true)]
        eps: Velocity,
        #[arg(long, default_value_t = 1.0, value_parser = parse_length)]
        length: f64,
        #[arg(long, value_enum, default_value_t = ConventionChoice::Both)]
        convention: ConventionChoice,
        /// Rod at rest in the stationary frame, measured from the moving one.
        #[arg(long)]
        swapped: bool,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compose two boosts (first --eps/--scale, then --eps2/--scale2).
    Compose {
        #[arg(long, value_parser = parse_velocity, allow_hyphen_values = true)]
        eps: Velocity,
        #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
        scale: f64,
        #[arg(long, value_parser = parse_velocity, allow_hyphen_values = true)]
        eps2: Velocity,
        #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
        scale2: f64,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

type Outcome = (Report, CommonArgs, Option<PathBuf>);

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Roundtrip {
            eps,
            length,
            convention,
            basis,
            out,
            common,
        } => {
            let cfg = ScenarioConfig {
                length,
                eps: eps.value(),
                convention,
                basis,
                c: common.c,
                seed: common.seed,
                tolerance: common.tolerance,
            };
            Ok((commands::roundtrip(&cfg)?, common, out))
        }
        Command::KappaSweep {
            from,
            to,
            step,
            out,
            common,
        } => {
            let args = SweepArgs {
                from: from.value(),
                to: to.value(),
                step,
                seed: common.seed,
                tolerance: common.tolerance,
            };
            Ok((commands::kappa_sweep(&args, &out)?, common, None))
        }
        Command::GroupAudit {
            samples,
            out,
            common,
        } => Ok((
            commands::group_audit(samples, common.seed, common.tolerance)?,
            common,
            out,
        )),
        Command::Equivalence {
            eps,
            length,
            random,
            out,
            common,
        } => {
            let lengths = if length.is_empty() { vec![1.0] } else { length };
            let mut points: Vec<(f64, Velocity)> = eps
                .iter()
                .flat_map(|&e| lengths.iter().map(move |&l| (l, e)))
                .collect();
            points.extend(commands::random_grid(random, common.seed));
            Ok((
                commands::equivalence(&points, common.seed, common.tolerance)?,
                common,
                out,
            ))
        }
        Command::Rod {
            eps,
            length,
            convention,
            swapped,
            out,
            common,
        } => Ok((
            commands::rod(
                length,
                eps,
                convention,
                swapped,
                common.seed,
                common.tolerance,
            )?,
            common,
            out,
        )),
        Command::Compose {
            eps,
            scale,
            eps2,
            scale2,
            out,
            common,
        } => Ok((
            commands::compose((eps, scale), (eps2, scale2), common.seed, common.tolerance)?,
            common,
            out,
        )),
    }
}

fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let body = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(cli.command).and_then(|(report, common, out)| {
        emit(&report, common.format, out.as_deref())?;
        Ok(report.passed())
    }) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_ASSERTION_FAILED,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_ERROR
        }
    };
    ExitCode::from(status as u8)
}
