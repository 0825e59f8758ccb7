use std::io::Write;

use morse_gps::solver::{Requested, Spectrum};

use super::{load_molecule, run_jobs, Job};
use crate::args::SolveArgs;
use crate::cache::SharedBasisCache;
use crate::output::{neg_ev, Rows, TABLE2_DECIMALS};
use crate::{CliError, Exit};

fn status(s: &Spectrum) -> String {
    let r = &s.report;
    match (r.converged, r.escalations) {
        (true, 0) => "converged".into(),
        (true, _) => format!("converged (r_max {})", r.r_max),
        (false, _) => format!("unconverged (r_max {})", r.r_max),
    }
}

pub fn run(args: &SolveArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<Exit, CliError> {
    let molecule = load_molecule(&args.molecule)?;
    let max_n = args.ns.iter().copied().max().unwrap_or(0);
    let config = args.grid.config(Requested::UpTo(max_n));
    let jobs: Vec<Job> = args
        .ells
        .iter()
        .map(|&ell| Job {
            molecule: molecule.clone(),
            ell,
            config,
        })
        .collect();
    let cache = SharedBasisCache::new();
    let spectra = run_jobs(&cache, &jobs);

    let mut rows = Rows::new(&["molecule", "n", "l", "neg_energy_ev", "status"]);
    let mut exit = Exit::Success;
    for &n in &args.ns {
        for (job, spectrum) in jobs.iter().zip(&spectra) {
            let ell = job.ell;
            let spectrum = match spectrum {
                Ok(s) => s,
                Err(e) => {
                    writeln!(diag, "{} n={n} l={ell}: {e}", molecule.name())?;
                    exit = Exit::Numerical;
                    continue;
                }
            };
            match spectrum.state(n) {
                Ok(st) => rows.push(vec![
                    molecule.name().to_string(),
                    n.to_string(),
                    ell.to_string(),
                    neg_ev(st.energy, TABLE2_DECIMALS),
                    status(spectrum),
                ]),
                Err(e) => {
                    let why = if spectrum.report.converged {
                        e.to_string()
                    } else {
                        format!("tail check still failing at r_max {}", spectrum.report.r_max)
                    };
                    writeln!(diag, "{} n={n} l={ell}: {why}", molecule.name())?;
                    exit = Exit::Numerical;
                }
            }
        }
    }
    rows.write(args.format, out)?;
    Ok(exit)
}
