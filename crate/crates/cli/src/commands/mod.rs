pub mod solve;
pub mod sweep;
pub mod tables;
pub mod verify;

use rayon::prelude::*;

use morse_gps::solver::{solve_with, SolveConfig, Spectrum};
use morse_gps::{molecule_params, MoleculeParams};

use crate::args::MoleculeArgs;
use crate::cache::SharedBasisCache;
use crate::params::read_params;
use crate::CliError;

pub(crate) fn load_molecule(args: &MoleculeArgs) -> Result<MoleculeParams, CliError> {
    match (&args.molecule, &args.params) {
        (Some(name), None) => Ok(molecule_params(name)?),
        (None, Some(path)) => Ok(read_params(path)?),
        _ => Err(CliError::Usage(
            "give exactly one of --molecule or --params".into(),
        )),
    }
}

/// One independent `(molecule, ℓ)` solve.
#[derive(Debug, Clone)]
pub(crate) struct Job {
    pub molecule: MoleculeParams,
    pub ell: u32,
    pub config: SolveConfig,
}

/// Runs jobs in parallel; results come back in job order.
pub(crate) fn run_jobs(
    cache: &SharedBasisCache,
    jobs: &[Job],
) -> Vec<morse_gps::Result<Spectrum>> {
    jobs.par_iter()
        .map(|j| solve_with(cache, &j.molecule, j.ell, &j.config))
        .collect()
}
