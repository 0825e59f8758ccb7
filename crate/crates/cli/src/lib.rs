//! Command-line front end for `morse-gps`: parameter files, a shared basis
//! cache for parallel solves, and the `solve`, `tables`, `sweep` and
//! `verify` commands.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub mod args;
pub mod cache;
pub mod commands;
pub mod output;
pub mod params;

pub use args::Cli;
use params::ParamsError;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
    Numerical = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Solver(#[from] morse_gps::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        use morse_gps::Error as E;
        match self {
            CliError::Usage(_) | CliError::Params(_) => Exit::Usage,
            CliError::Solver(E::UnknownMolecule { .. } | E::InvalidArgument { .. } | E::Domain { .. }) => {
                Exit::Usage
            }
            CliError::Solver(_) | CliError::Io(_) => Exit::Numerical,
        }
    }
}

fn open_out(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))
}

/// Runs one parsed command line and returns the exit code. Results go to
/// `stdout` (or `--out`), diagnostics to `stderr`.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    use args::Command;
    let out_path = match &cli.command {
        Command::Solve(a) => a.output.out.as_deref(),
        Command::Tables(a) => a.output.out.as_deref(),
        Command::Sweep(a) => a.output.out.as_deref(),
        Command::Verify(a) => a.output.out.as_deref(),
    };
    let result = (|| {
        let mut file = out_path.map(open_out).transpose()?;
        let out: &mut dyn Write = match file.as_mut() {
            Some(f) => f,
            None => stdout,
        };
        let exit = match &cli.command {
            Command::Solve(a) => commands::solve::run(a, out, stderr)?,
            Command::Tables(a) => commands::tables::run(a, out, stderr)?,
            Command::Sweep(a) => commands::sweep::run(a, out, stderr)?,
            Command::Verify(a) => commands::verify::run(a, out, stderr)?,
        };
        out.flush()?;
        Ok::<Exit, CliError>(exit)
    })();
    match result {
        Ok(exit) => exit as i32,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit() as i32
        }
    }
}
