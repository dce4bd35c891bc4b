use std::path::PathBuf;
use std::process::ExitCode;

use braggscat_cli::commands::Command;
use braggscat_cli::config::{parse_config, Format};
use braggscat_cli::error::CliResult;
use braggscat_cli::{execute, parse_span, Overrides};
use clap::{Args, Parser};

#[derive(Parser)]
#[command(name = "braggscat", version, about = "Scattering spectra and eigenmodes of atom arrays in a waveguide")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Args)]
struct Options {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file. Sidecars are written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Number of probe detunings.
    #[arg(long)]
    grid: Option<usize>,
    /// Probe detuning range as `lo,hi`.
    #[arg(long, value_parser = parse_span, allow_hyphen_values = true)]
    span: Option<[f64; 2]>,
    /// Transmission level that counts as a window.
    #[arg(long)]
    threshold: Option<f64>,
}

fn run(cli: Cli) -> CliResult<()> {
    let mut config = parse_config(&cli.options.config)?;
    let overrides = Overrides {
        out: cli.options.out,
        format: cli.options.format,
        grid: cli.options.grid,
        span: cli.options.span,
        threshold: cli.options.threshold,
    };
    overrides.apply(&mut config)?;
    execute(cli.command, &config)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.record());
            ExitCode::from(err.exit_code())
        }
    }
}
