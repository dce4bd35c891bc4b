//! Library side of the `braggscat` binary: config parsing, commands and
//! table output.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use commands::Command;
use config::{Format, RunConfig};
use error::{CliError, CliResult};
use table::{sidecar_path, write_file};

/// Flag values that override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub grid: Option<usize>,
    pub span: Option<[f64; 2]>,
    pub threshold: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, config: &mut RunConfig) -> CliResult<()> {
        if let Some(out) = &self.out {
            config.out = Some(out.clone());
        }
        if let Some(format) = self.format {
            config.format = Some(format);
        }
        if let Some(grid) = self.grid {
            config.grid = Some(grid);
        }
        if let Some(span) = self.span {
            config.span = Some(span);
        }
        if let Some(threshold) = self.threshold {
            config.threshold = Some(threshold);
        }
        config.validate()
    }
}

/// Runs one command and writes its outputs. Without `out`, the main table
/// goes to stdout and sidecars are skipped.
pub fn execute(command: Command, config: &RunConfig) -> CliResult<()> {
    let output = commands::run(command, config)?;
    let format = config.format.unwrap_or(Format::Csv);
    let main = output.table.render(format);
    match &config.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&main)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))
        }
        Some(out) => {
            write_file(out, &main)?;
            if let Some(features) = &output.features {
                write_file(&sidecar_path(out, "features", format), &features.render(format))?;
            }
            let mut meta = serde_json::to_vec_pretty(&output.meta).expect("serializable");
            meta.push(b'\n');
            write_file(&sidecar_path(out, "meta", Format::Json), &meta)
        }
    }
}

pub fn parse_span(text: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [lo, hi] => {
            let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo: {e}"))?;
            let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi: {e}"))?;
            Ok([lo, hi])
        }
        _ => Err("expected lo,hi".to_string()),
    }
}
