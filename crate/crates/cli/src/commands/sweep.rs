use std::io::Write;

use morse_gps::reference::{sweep_ns, SWEEP_ELLS, SWEEP_MAX_ELL};
use morse_gps::solver::Requested;

use super::{load_molecule, run_jobs, Job};
use crate::args::{SweepArgs, SweepMode};
use crate::cache::SharedBasisCache;
use crate::output::{neg_ev, Rows, SWEEP_DECIMALS};
use crate::{CliError, Exit};

fn ranges(ells: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < ells.len() {
        let mut j = i;
        while j + 1 < ells.len() && ells[j + 1] == ells[j] + 1 {
            j += 1;
        }
        parts.push(if j > i {
            format!("{}..={}", ells[i], ells[j])
        } else {
            ells[i].to_string()
        });
        i = j + 1;
    }
    parts.join(",")
}

pub fn run(args: &SweepArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<Exit, CliError> {
    let molecule = load_molecule(&args.molecule)?;
    let name = molecule.name().to_string();
    let ells: Vec<u32> = match (&args.ells, args.mode) {
        (Some(l), _) => l.clone(),
        (None, SweepMode::VsN) => SWEEP_ELLS.to_vec(),
        (None, SweepMode::VsL) => (0..=SWEEP_MAX_ELL).collect(),
    };
    // In both modes --n narrows the default set rather than extending it.
    let ns: Option<Vec<usize>> = match (&args.ns, args.mode) {
        (Some(n), SweepMode::VsN) => Some(n.clone()),
        (None, SweepMode::VsN) => None,
        (Some(n), SweepMode::VsL) => {
            let plotted = sweep_ns(&name);
            let (kept, dropped): (Vec<usize>, Vec<usize>) = n.iter().partition(|n| plotted.contains(n));
            if !dropped.is_empty() {
                let list: Vec<String> = plotted.iter().map(ToString::to_string).collect();
                writeln!(
                    diag,
                    "note: the {name} l-sweep covers n = {}; rows omitted for n = {}",
                    list.join(","),
                    dropped.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                )?;
            }
            Some(kept)
        }
        (None, SweepMode::VsL) => Some(sweep_ns(&name).to_vec()),
    };
    let requested = match &ns {
        Some(ns) => Requested::UpTo(ns.iter().copied().max().unwrap_or(0)),
        None => Requested::All,
    };
    let nothing = ns.as_ref().is_some_and(Vec::is_empty);
    let ells = if nothing { Vec::new() } else { ells };
    let jobs: Vec<Job> = ells
        .iter()
        .map(|&ell| Job {
            molecule: molecule.clone(),
            ell,
            config: args.grid.config(requested),
        })
        .collect();
    let cache = SharedBasisCache::new();
    let spectra = run_jobs(&cache, &jobs);

    let mut exit = Exit::Success;
    let mut ok = Vec::with_capacity(spectra.len());
    for (job, s) in jobs.iter().zip(spectra) {
        match s {
            Ok(s) => {
                if !s.report.converged {
                    writeln!(
                        diag,
                        "{name} l={}: tail check still failing at r_max {}; later levels omitted",
                        job.ell, s.report.r_max
                    )?;
                    exit = Exit::Numerical;
                }
                ok.push(Some(s));
            }
            Err(e) => {
                writeln!(diag, "{name} l={}: {e}", job.ell)?;
                exit = Exit::Numerical;
                ok.push(None);
            }
        }
    }

    let rows = match args.mode {
        SweepMode::VsN => {
            let mut rows = Rows::new(&["molecule", "l", "n", "neg_energy_ev"]);
            for (ell, s) in ells.iter().zip(&ok) {
                let Some(s) = s else { continue };
                for st in &s.states {
                    if ns.as_ref().is_some_and(|ns| !ns.contains(&st.n)) {
                        continue;
                    }
                    rows.push(vec![
                        name.clone(),
                        ell.to_string(),
                        st.n.to_string(),
                        neg_ev(st.energy, SWEEP_DECIMALS),
                    ]);
                }
            }
            rows
        }
        SweepMode::VsL => {
            let mut rows = Rows::new(&["molecule", "n", "l", "neg_energy_ev"]);
            for &n in ns.as_deref().unwrap_or(&[]) {
                let mut missing = Vec::new();
                for (ell, s) in ells.iter().zip(&ok) {
                    let Some(s) = s else { continue };
                    match s.state(n) {
                        Ok(st) => rows.push(vec![
                            name.clone(),
                            n.to_string(),
                            ell.to_string(),
                            neg_ev(st.energy, SWEEP_DECIMALS),
                        ]),
                        Err(_) => missing.push(*ell),
                    }
                }
                if !missing.is_empty() {
                    writeln!(
                        diag,
                        "note: {name} n={n} is not bound for l = {}; rows omitted",
                        ranges(&missing)
                    )?;
                }
            }
            rows
        }
    };
    rows.write(args.format, out)?;
    Ok(exit)
}

#[cfg(test)]
mod tests {
    use super::ranges;

    #[test]
    fn compresses_runs() {
        assert_eq!(ranges(&[0, 1, 2, 3, 7, 9, 10]), "0..=3,7,9..=10");
        assert_eq!(ranges(&[5]), "5");
    }
}
