use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use morse_gps::molecule_params;
use morse_gps::morse::{bound_state_count, exact_swave_energy};
use morse_gps::numerov::{numerov_energy, NumerovSpec};
use morse_gps::reference::{truncate_to, NUMEROV_SAMPLE, TABLE2, TABLE3};
use morse_gps::solver::Requested;
use morse_gps::units::{hartree_to_ev, BUILTIN_NAMES};

use super::tables::compute_table;
use super::{run_jobs, Job};
use crate::args::VerifyArgs;
use crate::cache::SharedBasisCache;
use crate::{CliError, Exit};

/// Closed-form s-wave tolerance, hartree.
pub const SWAVE_TOL: f64 = 1e-9;
/// GPS against Numerov, eV.
pub const NUMEROV_TOL_EV: f64 = 1e-5;
pub const TABLE2_TOL_EV: f64 = 1e-6;
pub const TABLE3_TOL_EV: f64 = 1e-5;

/// Largest deviation of one suite and where it happened.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub max_dev_ev: f64,
    pub worst: String,
    pub failures: Vec<String>,
    pub extra: String,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            max_dev_ev: 0.0,
            worst: String::new(),
            failures: Vec::new(),
            extra: String::new(),
        }
    }

    fn record(&mut self, label: String, dev_ev: f64, ok: bool) {
        self.checked += 1;
        if dev_ev >= self.max_dev_ev {
            self.max_dev_ev = dev_ev;
            self.worst = label.clone();
        }
        if !ok {
            self.failures.push(label);
        }
    }

    fn fail(&mut self, label: String) {
        self.checked += 1;
        self.max_dev_ev = f64::INFINITY;
        self.worst = label.clone();
        self.failures.push(label);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn swave_suite(cache: &SharedBasisCache, args: &VerifyArgs) -> Result<SuiteResult, CliError> {
    let jobs = BUILTIN_NAMES
        .iter()
        .map(|n| {
            Ok(Job {
                molecule: molecule_params(n)?,
                ell: 0,
                config: args.grid.config(Requested::All),
            })
        })
        .collect::<Result<Vec<Job>, CliError>>()?;
    let mut suite = SuiteResult::new("swave");
    let mut counts = Vec::new();
    for (job, spectrum) in jobs.iter().zip(run_jobs(cache, &jobs)) {
        let m = &job.molecule;
        let s = match spectrum {
            Ok(s) => s,
            Err(e) => {
                suite.fail(format!("{}: {e}", m.name()));
                continue;
            }
        };
        let expected = bound_state_count(m);
        counts.push(format!("{} {}", m.name(), s.len()));
        if s.len() != expected {
            suite.fail(format!("{} has {} levels, expected {expected}", m.name(), s.len()));
        }
        for st in &s.states {
            let exact = exact_swave_energy(st.n, m)?;
            let dev = (st.energy - exact).abs();
            suite.record(
                format!("{} n={}", m.name(), st.n),
                hartree_to_ev(dev),
                dev <= SWAVE_TOL,
            );
        }
    }
    suite.extra = format!("levels: {}", counts.join(", "));
    Ok(suite)
}

pub fn numerov_suite(cache: &SharedBasisCache, args: &VerifyArgs) -> Result<SuiteResult, CliError> {
    let mut wanted: BTreeMap<(&str, u32), usize> = BTreeMap::new();
    for (name, n, ell) in NUMEROV_SAMPLE {
        let e = wanted.entry((name, ell)).or_default();
        *e = (*e).max(n);
    }
    let keys: Vec<(&str, u32)> = wanted.keys().copied().collect();
    let jobs = wanted
        .iter()
        .map(|(&(name, ell), &n)| {
            Ok(Job {
                molecule: molecule_params(name)?,
                ell,
                config: args.grid.config(Requested::UpTo(n)),
            })
        })
        .collect::<Result<Vec<Job>, CliError>>()?;
    let spectra = run_jobs(cache, &jobs);
    let shooting: Vec<morse_gps::Result<f64>> = NUMEROV_SAMPLE
        .par_iter()
        .map(|&(name, n, ell)| {
            let m = molecule_params(name)?;
            numerov_energy(n, ell, &m, &NumerovSpec::for_molecule(&m))
        })
        .collect();

    let mut suite = SuiteResult::new("numerov");
    for ((name, n, ell), numerov) in NUMEROV_SAMPLE.iter().zip(shooting) {
        let label = format!("{name} n={n} l={ell}");
        let i = keys.iter().position(|k| *k == (*name, *ell)).unwrap();
        let gps = match &spectra[i] {
            Ok(s) => s.state(*n).map(|st| st.energy),
            Err(e) => Err(e.clone()),
        };
        match (gps, numerov) {
            (Ok(a), Ok(b)) => {
                let dev = hartree_to_ev((a - b).abs());
                suite.record(label, dev, dev <= NUMEROV_TOL_EV);
            }
            (Err(e), _) | (_, Err(e)) => suite.fail(format!("{label}: {e}")),
        }
    }
    Ok(suite)
}

pub fn table_suite(cache: &SharedBasisCache, args: &VerifyArgs, which: u8) -> Result<SuiteResult, CliError> {
    let (cells, tol, name) = match which {
        2 => (&TABLE2[..], TABLE2_TOL_EV, "table2"),
        _ => (&TABLE3[..], TABLE3_TOL_EV, "table3"),
    };
    let mut suite = SuiteResult::new(name);
    let mut digits = 0;
    for (g, energy) in compute_table(cache, &args.grid, cells)? {
        let label = format!("{} n={} l={}", g.molecule, g.n, g.ell);
        match energy {
            Ok(e) => {
                let neg = -hartree_to_ev(e);
                let dev = (neg - g.neg_energy_ev()).abs();
                if truncate_to(neg, g.decimals()) == g.printed {
                    digits += 1;
                }
                suite.record(label, dev, dev <= tol);
            }
            Err(e) => suite.fail(format!("{label}: {e}")),
        }
    }
    suite.extra = format!("{digits}/{} match at printed precision", cells.len());
    Ok(suite)
}

fn report(out: &mut dyn Write, s: &SuiteResult, limit: &str) -> std::io::Result<()> {
    let verdict = if s.passed() { "PASS" } else { "FAIL" };
    write!(
        out,
        "{}: max |ΔE| = {:.3e} eV over {} checks (limit {limit})",
        s.name, s.max_dev_ev, s.checked
    )?;
    if !s.extra.is_empty() {
        write!(out, "; {}", s.extra)?;
    }
    writeln!(out, "  {verdict}")?;
    if !s.passed() {
        writeln!(out, "  worst: {}", s.worst)?;
    }
    Ok(())
}

pub fn run(args: &VerifyArgs, out: &mut dyn Write, _diag: &mut dyn Write) -> Result<Exit, CliError> {
    let cache = SharedBasisCache::new();
    let suites = [
        (swave_suite(&cache, args)?, "1e-9 hartree"),
        (numerov_suite(&cache, args)?, "1e-5 eV"),
        (table_suite(&cache, args, 2)?, "1e-6 eV"),
        (table_suite(&cache, args, 3)?, "1e-5 eV"),
    ];
    for (s, limit) in &suites {
        report(out, s, limit)?;
    }
    Ok(if suites.iter().all(|(s, _)| s.passed()) {
        Exit::Success
    } else {
        Exit::VerificationFailed
    })
}
