use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morse_gps::solver::{Requested, SolveConfig, DEFAULT_L, DEFAULT_R_MAX};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "morse-gps",
    version,
    about = "Ro-vibrational levels of diatomic Morse oscillators by generalized pseudospectral collocation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies of selected (n, l) levels of one molecule
    Solve(SolveArgs),
    /// Recompute every cell of table 2 (n ≤ 2, l ≤ 2) or table 3 (l = 10, 20, 25)
    Tables(TablesArgs),
    /// Energy curves against n or against l, as CSV for plotting
    Sweep(SweepArgs),
    /// Check against the closed-form s-wave levels, Numerov shooting and the reference tables
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct MoleculeArgs {
    /// Built-in molecule: H2, LiH, HCl or CO
    #[arg(long, conflicts_with = "params", required_unless_present = "params")]
    pub molecule: Option<String>,
    /// Molecule parameter file (key = value lines)
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Polynomial order [default: 300, more for molecules with many levels]
    #[arg(long = "N", value_name = "N", value_parser = parse_order)]
    pub order: Option<usize>,
    /// Map scale in bohr
    #[arg(long = "L", value_name = "BOHR", default_value_t = DEFAULT_L, value_parser = parse_positive)]
    pub l: f64,
    /// Outer radius of the box in bohr
    #[arg(long = "rmax", value_name = "BOHR", default_value_t = DEFAULT_R_MAX, value_parser = parse_positive)]
    pub r_max: f64,
}

impl GridArgs {
    pub fn config(&self, requested: Requested) -> SolveConfig {
        SolveConfig {
            order: self.order,
            l: self.l,
            r_max: self.r_max,
            requested,
            ..SolveConfig::default()
        }
    }
}

impl Default for GridArgs {
    fn default() -> Self {
        Self {
            order: None,
            l: DEFAULT_L,
            r_max: DEFAULT_R_MAX,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write results here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub molecule: MoleculeArgs,
    /// Rotational quantum numbers, comma separated
    #[arg(long = "l", value_delimiter = ',', default_value = "0")]
    pub ells: Vec<u32>,
    /// Vibrational quantum numbers, comma separated
    #[arg(long = "n", value_delimiter = ',', default_value = "0")]
    pub ns: Vec<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Which table: 2 or 3
    #[arg(value_parser = clap::value_parser!(u8).range(2..=3))]
    pub which: u8,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    /// One curve per l over every bound n
    VsN,
    /// One curve per n over l = 0..=25
    VsL,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub molecule: MoleculeArgs,
    #[arg(long, value_enum)]
    pub mode: SweepMode,
    /// Override the l values (curves for vs-n, abscissa for vs-l)
    #[arg(long = "l", value_delimiter = ',')]
    pub ells: Option<Vec<u32>>,
    /// Override the n values (curves for vs-l, filter for vs-n)
    #[arg(long = "n", value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err("the order must be at least 2".into());
    }
    Ok(n)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(v.is_finite() && v > 0.0) {
        return Err("must be a positive number".into());
    }
    Ok(v)
}
