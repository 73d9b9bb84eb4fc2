//! `rho-planes`: midpoint-support checks, ρ-polygons, ρ-ellipses, sector
//! areas and figures for two-dimensional normed spaces.

mod commands;
mod config;
mod error;
mod scene;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "rho-planes",
    version,
    about = "Numerical geometry of normed planes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the midpoint-support property on sampled chords
    Check(RunConfig),
    /// Build the rho-polygon of a seed point
    Polygon(RunConfig),
    /// Fit the rho-ellipse through u, (u+u*)/2rho and u*
    Ellipse(RunConfig),
    /// Ball, sector and cap areas
    Area(RunConfig),
    /// Run the checker over every spec and rho
    Sweep(RunConfig),
    /// Measure the sector partition for an even vertex count
    ProbeEven(RunConfig),
    /// Draw S, rhoS, a rho-polygon and optionally its rho-ellipse as SVG
    Render(RunConfig),
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check(c) => commands::check(c.merged()?),
        Command::Polygon(c) => commands::polygon(c.merged()?),
        Command::Ellipse(c) => commands::ellipse(c.merged()?),
        Command::Area(c) => commands::area(c.merged()?),
        Command::Sweep(c) => commands::sweep_cmd(c.merged()?),
        Command::ProbeEven(c) => commands::probe_even(c.merged()?),
        Command::Render(c) => commands::render(c.merged()?),
    }
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => match run(cli) {
            Ok(outcome) => outcome.exit_code(),
            Err(e) => {
                eprintln!("{}", e.to_json());
                e.exit_code()
            }
        },
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            0
        }
        Err(e) => {
            let err = CliError::usage(e.to_string().trim_end());
            eprintln!("{}", err.to_json());
            err.exit_code()
        }
    };
    std::process::exit(code);
}
