use std::collections::BTreeMap;
use std::io::Write;

use morse_gps::molecule_params;
use morse_gps::reference::{table, GoldenValue};
use morse_gps::solver::Requested;

use super::{run_jobs, Job};
use crate::args::{GridArgs, TablesArgs};
use crate::cache::SharedBasisCache;
use crate::output::{neg_ev, Format, Rows};
use crate::{CliError, Exit};

/// Energy (hartree) for every cell of a table, in table order.
pub fn compute_table(
    cache: &SharedBasisCache,
    grid: &GridArgs,
    cells: &[GoldenValue],
) -> Result<Vec<(GoldenValue, morse_gps::Result<f64>)>, CliError> {
    let mut wanted: BTreeMap<(&str, u32), usize> = BTreeMap::new();
    for g in cells {
        let n = wanted.entry((g.molecule, g.ell)).or_default();
        *n = (*n).max(g.n);
    }
    let keys: Vec<(&str, u32)> = wanted.keys().copied().collect();
    let jobs = wanted
        .iter()
        .map(|(&(name, ell), &n)| {
            Ok(Job {
                molecule: molecule_params(name)?,
                ell,
                config: grid.config(Requested::UpTo(n)),
            })
        })
        .collect::<Result<Vec<Job>, CliError>>()?;
    let spectra = run_jobs(cache, &jobs);
    Ok(cells
        .iter()
        .map(|g| {
            let i = keys.iter().position(|k| *k == (g.molecule, g.ell)).unwrap();
            let energy = match &spectra[i] {
                Ok(s) => s.state(g.n).map(|st| st.energy),
                Err(e) => Err(e.clone()),
            };
            (*g, energy)
        })
        .collect())
}

pub fn run(args: &TablesArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<Exit, CliError> {
    let cells = table(args.which).ok_or_else(|| CliError::Usage(format!("no table {}", args.which)))?;
    let cache = SharedBasisCache::new();
    let results = compute_table(&cache, &args.grid, cells)?;

    let mut rows = match args.format {
        Format::Csv => Rows::new(&["molecule", "n", "l", "neg_energy_ev"]),
        Format::Table => Rows::new(&["molecule", "n", "l", "neg_energy_ev", "reference", "match"]),
    };
    let mut exit = Exit::Success;
    for (g, energy) in results {
        let e = match energy {
            Ok(e) => e,
            Err(err) => {
                writeln!(diag, "{} n={} l={}: {err}", g.molecule, g.n, g.ell)?;
                exit = Exit::Numerical;
                continue;
            }
        };
        let value = neg_ev(e, g.decimals());
        let mut row = vec![g.molecule.to_string(), g.n.to_string(), g.ell.to_string(), value.clone()];
        if args.format == Format::Table {
            row.push(g.printed.to_string());
            row.push(if value == g.printed { "yes" } else { "no" }.to_string());
        }
        rows.push(row);
    }
    rows.write(args.format, out)?;
    Ok(exit)
}
