//! Morse and effective potentials, and the closed-form s-wave spectrum.

use crate::error::{Error, Result};
use crate::units::MoleculeParams;

fn check_radius(r: f64) -> Result<f64> {
    if r.is_finite() && r > 0.0 {
        Ok(r)
    } else {
        Err(Error::Domain {
            name: "r",
            value: r,
            domain: "(0, ∞)",
        })
    }
}

/// `D_e(e^{−2a y} − 2e^{−a y})` with `y = (r − r_e)/r_e`, in hartree.
pub fn morse_potential(r: f64, molecule: &MoleculeParams) -> Result<f64> {
    let r = check_radius(r)?;
    Ok(morse_unchecked(r, molecule))
}

fn morse_unchecked(r: f64, molecule: &MoleculeParams) -> f64 {
    let y = (r - molecule.re()) / molecule.re();
    let e = libm::exp(-molecule.a() * y);
    molecule.de() * (e * e - 2.0 * e)
}

/// A molecule paired with a rotational quantum number.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePotentialSpec {
    pub molecule: MoleculeParams,
    pub ell: u32,
}

impl EffectivePotentialSpec {
    pub fn new(molecule: MoleculeParams, ell: u32) -> Self {
        Self { molecule, ell }
    }

    /// `ℓ(ℓ+1)/(2μr²)`.
    pub fn centrifugal(&self, r: f64) -> f64 {
        centrifugal_term(self.ell, self.molecule.mu(), r)
    }
}

pub(crate) fn centrifugal_term(ell: u32, mu: f64, r: f64) -> f64 {
    let l = f64::from(ell);
    l * (l + 1.0) / (2.0 * mu * r * r)
}

/// Morse potential plus the centrifugal barrier, in hartree.
pub fn effective_potential(r: f64, spec: &EffectivePotentialSpec) -> Result<f64> {
    let r = check_radius(r)?;
    Ok(morse_unchecked(r, &spec.molecule) + spec.centrifugal(r))
}

/// `λ = sqrt(2μD_e)·r_e/a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseLambda {
    pub lambda: f64,
}

impl MorseLambda {
    pub fn of(molecule: &MoleculeParams) -> Self {
        Self {
            lambda: libm::sqrt(2.0 * molecule.mu() * molecule.de()) * molecule.re() / molecule.a(),
        }
    }

    /// Number of s-wave bound states, `floor(λ − ½) + 1` (zero if λ ≤ ½).
    pub fn bound_count(&self) -> usize {
        if self.lambda <= 0.5 {
            0
        } else {
            libm::floor(self.lambda - 0.5) as usize + 1
        }
    }
}

/// `E_n = −D_e(1 − (n+½)/λ)²` for `n + ½ < λ`.
pub fn exact_swave_energy(n: usize, molecule: &MoleculeParams) -> Result<f64> {
    let lam = MorseLambda::of(molecule);
    let count = lam.bound_count();
    if n >= count {
        return Err(Error::NoSuchBoundState {
            n,
            max_n: count.saturating_sub(1),
        });
    }
    let t = 1.0 - (n as f64 + 0.5) / lam.lambda;
    Ok(-molecule.de() * t * t)
}

pub fn bound_state_count(molecule: &MoleculeParams) -> usize {
    MorseLambda::of(molecule).bound_count()
}
