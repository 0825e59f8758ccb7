//! Physical constants, the three unit conversions used at the IO boundary,
//! and the built-in molecule table.
//!
//! Internally every quantity is in atomic units: energies in hartree, lengths
//! in bohr, masses in electron masses, with ħ = 1.

use alloc::string::{String, ToString};

use crate::error::{finite, positive, Error, Result};

/// Conversion ratios between input units and atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Å per bohr.
    pub bohr_in_angstrom: f64,
    /// eV per hartree.
    pub hartree_in_ev: f64,
    /// Electron rest mass in unified atomic mass units.
    pub electron_mass_in_amu: f64,
}

/// CODATA 2010 values.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    bohr_in_angstrom: 0.529_177_210_92,
    hartree_in_ev: 27.211_385_05,
    electron_mass_in_amu: 5.485_799_094_6e-4,
};

pub fn ev_to_hartree(e: f64) -> Result<f64> {
    Ok(finite("energy", e)? / CONSTANTS.hartree_in_ev)
}

/// Infallible: used on solver output, which is always finite.
pub fn hartree_to_ev(e: f64) -> f64 {
    e * CONSTANTS.hartree_in_ev
}

pub fn angstrom_to_bohr(l: f64) -> Result<f64> {
    Ok(finite("length", l)? / CONSTANTS.bohr_in_angstrom)
}

pub fn bohr_to_angstrom(l: f64) -> f64 {
    l * CONSTANTS.bohr_in_angstrom
}

pub fn amu_to_electron_masses(m: f64) -> Result<f64> {
    Ok(positive("mass", m)? / CONSTANTS.electron_mass_in_amu)
}

pub fn electron_masses_to_amu(m: f64) -> f64 {
    m * CONSTANTS.electron_mass_in_amu
}

/// Spectroscopic constants in the units molecules are usually tabulated in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectroscopicRecord {
    pub de_ev: f64,
    pub re_angstrom: f64,
    pub mu_amu: f64,
    /// Dimensionless Morse steepness.
    pub a: f64,
}

/// Morse parameters of one diatomic molecule.
///
/// Holds the record it was built from (so values print back exactly) and the
/// atomic-unit values the solver consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeParams {
    name: String,
    record: SpectroscopicRecord,
    de: f64,
    re: f64,
    mu: f64,
}

impl MoleculeParams {
    pub fn new(name: &str, record: SpectroscopicRecord) -> Result<Self> {
        let de_ev = positive("de_ev", record.de_ev)?;
        let re_angstrom = positive("re_angstrom", record.re_angstrom)?;
        positive("mu_amu", record.mu_amu)?;
        positive("a", record.a)?;
        Ok(Self {
            name: name.to_string(),
            record,
            de: ev_to_hartree(de_ev)?,
            re: angstrom_to_bohr(re_angstrom)?,
            mu: amu_to_electron_masses(record.mu_amu)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn record(&self) -> &SpectroscopicRecord {
        &self.record
    }

    /// Well depth in hartree.
    pub fn de(&self) -> f64 {
        self.de
    }

    /// Equilibrium separation in bohr.
    pub fn re(&self) -> f64 {
        self.re
    }

    /// Reduced mass in electron masses.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn a(&self) -> f64 {
        self.record.a
    }

    /// Converts the atomic-unit values back to the input units.
    pub fn to_input_units(&self) -> SpectroscopicRecord {
        SpectroscopicRecord {
            de_ev: hartree_to_ev(self.de),
            re_angstrom: bohr_to_angstrom(self.re),
            mu_amu: electron_masses_to_amu(self.mu),
            a: self.record.a,
        }
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["H2", "LiH", "HCl", "CO"];

// CO r_e happens to sit near 2/√π.
#[allow(clippy::approx_constant)]
const BUILTIN: [(&str, SpectroscopicRecord); 4] = [
    (
        "H2",
        SpectroscopicRecord {
            de_ev: 4.7446,
            re_angstrom: 0.7416,
            mu_amu: 0.50391,
            a: 1.440558,
        },
    ),
    (
        "LiH",
        SpectroscopicRecord {
            de_ev: 2.515287,
            re_angstrom: 1.5956,
            mu_amu: 0.8801221,
            a: 1.7998368,
        },
    ),
    (
        "HCl",
        SpectroscopicRecord {
            de_ev: 4.61907,
            re_angstrom: 1.2746,
            mu_amu: 0.9801045,
            a: 2.38057,
        },
    ),
    (
        "CO",
        SpectroscopicRecord {
            de_ev: 11.2256,
            re_angstrom: 1.1283,
            mu_amu: 6.8606719,
            a: 2.59441,
        },
    ),
];

/// Looks up a built-in molecule by name, ignoring ASCII case.
pub fn molecule_params(name: &str) -> Result<MoleculeParams> {
    BUILTIN
        .iter()
        .find(|(key, _)| key.eq_ignore_ascii_case(name.trim()))
        .map(|(key, record)| MoleculeParams::new(key, *record))
        .unwrap_or_else(|| {
            Err(Error::UnknownMolecule {
                name: name.to_string(),
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constants_are_pinned() {
        assert_eq!(CONSTANTS.bohr_in_angstrom, 0.52917721092);
        assert_eq!(CONSTANTS.hartree_in_ev, 27.21138505);
        assert_eq!(CONSTANTS.electron_mass_in_amu, 5.4857990946e-4);
    }

    #[test]
    fn energy_conversion() {
        assert_eq!(ev_to_hartree(27.21138505).unwrap(), 1.0);
        assert_eq!(ev_to_hartree(0.0).unwrap(), 0.0);
        let h = ev_to_hartree(4.7446).unwrap();
        assert_relative_eq!(h, 0.17436084, max_relative = 1e-7);
        assert_relative_eq!(h * 27.21138505, 4.7446, max_relative = 1e-15);
        assert!(ev_to_hartree(f64::NAN).is_err());
        assert!(ev_to_hartree(f64::INFINITY).is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn length_conversion() {
        assert_eq!(angstrom_to_bohr(0.52917721092).unwrap(), 1.0);
        assert_relative_eq!(
            angstrom_to_bohr(0.7416).unwrap(),
            1.40142089,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            angstrom_to_bohr(1.1283).unwrap(),
            2.13217799,
            max_relative = 1e-8
        );
        assert!(angstrom_to_bohr(f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn mass_conversion() {
        assert_eq!(amu_to_electron_masses(5.4857990946e-4).unwrap(), 1.0);
        assert_relative_eq!(
            amu_to_electron_masses(0.50391).unwrap(),
            918.571736,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            amu_to_electron_masses(6.8606719).unwrap(),
            12506.2398,
            max_relative = 1e-8
        );
        assert!(amu_to_electron_masses(0.0).is_err());
        assert!(amu_to_electron_masses(-1.0).is_err());
    }

    #[test]
    fn inverse_conversions() {
        for v in [1e-3, 0.7416, 1.0, 4.7446, 12.5, 1e4] {
            assert_relative_eq!(
                hartree_to_ev(ev_to_hartree(v).unwrap()),
                v,
                max_relative = 1e-14
            );
            assert_relative_eq!(
                bohr_to_angstrom(angstrom_to_bohr(v).unwrap()),
                v,
                max_relative = 1e-14
            );
            assert_relative_eq!(
                electron_masses_to_amu(amu_to_electron_masses(v).unwrap()),
                v,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn builtin_lookup() {
        let h2 = molecule_params("H2").unwrap();
        assert_eq!(h2.name(), "H2");
        assert_eq!(
            *h2.record(),
            SpectroscopicRecord {
                de_ev: 4.7446,
                re_angstrom: 0.7416,
                mu_amu: 0.50391,
                a: 1.440558
            }
        );
        let co = molecule_params("co").unwrap();
        assert_eq!(co.name(), "CO");
        assert_eq!(co.record().de_ev, 11.2256);
        assert_eq!(co.record().mu_amu, 6.8606719);
        assert_eq!(co.a(), 2.59441);
        assert_eq!(molecule_params("lih").unwrap().name(), "LiH");
    }

    #[test]
    fn unknown_molecule_lists_valid_names() {
        let err = molecule_params("XYZ").unwrap_err();
        assert_eq!(
            err,
            Error::UnknownMolecule {
                name: "XYZ".to_string()
            }
        );
        let msg = alloc::format!("{err}");
        for name in BUILTIN_NAMES {
            assert!(msg.contains(name), "{msg}");
        }
    }

    #[test]
    fn round_trip_through_atomic_units() {
        for name in BUILTIN_NAMES {
            let m = molecule_params(name).unwrap();
            let back = m.to_input_units();
            let rec = m.record();
            assert_relative_eq!(back.de_ev, rec.de_ev, max_relative = 1e-12);
            assert_relative_eq!(back.re_angstrom, rec.re_angstrom, max_relative = 1e-12);
            assert_relative_eq!(back.mu_amu, rec.mu_amu, max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        let good = SpectroscopicRecord {
            de_ev: 1.0,
            re_angstrom: 1.0,
            mu_amu: 1.0,
            a: 1.0,
        };
        assert!(MoleculeParams::new("ok", good).is_ok());
        for bad in [
            SpectroscopicRecord { de_ev: 0.0, ..good },
            SpectroscopicRecord {
                re_angstrom: -1.0,
                ..good
            },
            SpectroscopicRecord { mu_amu: 0.0, ..good },
            SpectroscopicRecord { a: f64::NAN, ..good },
        ] {
            assert!(MoleculeParams::new("bad", bad).is_err());
        }
    }
}
