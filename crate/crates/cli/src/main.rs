//! `figraph`: instantiate graph families, scan their stability, fit counts,
//! and compute spectra and homology.

mod args;
mod cache;
mod commands;
mod engine;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::args::OutputArgs;
use crate::cache::{write_atomic, Cache};
use crate::engine::Engine;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "figraph", version, about = "Representation-stable graph families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit G_n as graph JSON.
    Instantiate(commands::InstantiateArgs),
    /// Run the stability certifiers over a range of n.
    Scan(commands::ScanArgs),
    /// Sample a quantity and fit an eventual polynomial.
    Fit(commands::FitArgs),
    /// Exact spectra along the family with multiplicity fits.
    Spectra(commands::SpectraArgs),
    /// Homology of the Hom-complex Hom(T, G).
    Homology(commands::HomologyArgs),
    /// Homology of the discretized configuration space of m points.
    Conf(commands::ConfArgs),
    /// Euler characteristics of configuration spaces from valencies.
    Gal(commands::GalArgs),
    /// Consolidated dossier for one family.
    Report(report::ReportArgs),
}

fn engine(output: &OutputArgs) -> Result<Engine, CliError> {
    Ok(Engine::new(output.caps.caps()?, Cache::new(output.cache_dir.clone())?))
}

fn emit(output: &OutputArgs, text: String) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Instantiate(a) => {
            let g = commands::instantiate(&a)?;
            emit(&a.output, json(&g)?)
        }
        Command::Scan(a) => emit(&a.output, json(&commands::scan(&a, &engine(&a.output)?)?)?),
        Command::Fit(a) => emit(&a.output, json(&commands::fit(&a, &engine(&a.output)?)?)?),
        Command::Spectra(a) => emit(&a.output, json(&commands::spectra(&a, &engine(&a.output)?)?)?),
        Command::Homology(a) => emit(&a.output, json(&commands::homology(&a, &engine(&a.output)?)?)?),
        Command::Conf(a) => emit(&a.output, json(&commands::conf(&a, &engine(&a.output)?)?)?),
        Command::Gal(a) => emit(&a.output, json(&commands::gal(&a, &engine(&a.output)?)?)?),
        Command::Report(a) => {
            let r = report::report(&a, &engine(&a.output)?)?;
            let text = match a.format {
                report::Format::Json => json(&r)?,
                report::Format::Markdown => report::markdown(&r),
            };
            emit(&a.output, text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("figraph: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
