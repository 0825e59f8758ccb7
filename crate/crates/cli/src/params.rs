//! `key = value` molecule files.
//!
//! ```text
//! # HF, from a spectroscopy handbook
//! name        = HF
//! de_ev       = 6.12
//! re_angstrom = 0.9168
//! mu_amu      = 0.9571
//! a           = 2.2266
//! ```
//!
//! `#` starts a comment anywhere on a line. `name` is optional.

use std::fs;
use std::path::Path;

use morse_gps::units::SpectroscopicRecord;
use morse_gps::MoleculeParams;

#[derive(Debug, thiserror::Error)]
pub enum ParamsError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}` (expected name, de_ev, re_angstrom, mu_amu, a)")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: `{key}` must be a number, found `{value}`")]
    Number {
        line: usize,
        key: String,
        value: String,
    },
    #[error("missing key `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Invalid(#[from] morse_gps::Error),
}

pub fn parse_params(text: &str) -> Result<MoleculeParams, ParamsError> {
    let mut name: Option<String> = None;
    let mut values: [Option<f64>; 4] = [None; 4];
    const KEYS: [&str; 4] = ["de_ev", "re_angstrom", "mu_amu", "a"];

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(ParamsError::Syntax {
                line,
                text: body.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ParamsError::Syntax {
                line,
                text: body.to_string(),
            });
        }
        let duplicate = || ParamsError::Duplicate {
            line,
            key: key.to_string(),
        };
        if key == "name" {
            if name.replace(value.to_string()).is_some() {
                return Err(duplicate());
            }
            continue;
        }
        let Some(slot) = KEYS.iter().position(|k| *k == key) else {
            return Err(ParamsError::UnknownKey {
                line,
                key: key.to_string(),
            });
        };
        let v: f64 = value.parse().map_err(|_| ParamsError::Number {
            line,
            key: key.to_string(),
            value: value.to_string(),
        })?;
        if values[slot].replace(v).is_some() {
            return Err(duplicate());
        }
    }

    let get = |i: usize| values[i].ok_or(ParamsError::Missing(KEYS[i]));
    let record = SpectroscopicRecord {
        de_ev: get(0)?,
        re_angstrom: get(1)?,
        mu_amu: get(2)?,
        a: get(3)?,
    };
    Ok(MoleculeParams::new(
        name.as_deref().unwrap_or("custom"),
        record,
    )?)
}

pub fn read_params(path: &Path) -> Result<MoleculeParams, ParamsError> {
    let text = fs::read_to_string(path).map_err(|source| ParamsError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_params(&text)
}

/// Renders a molecule back into the file format.
pub fn write_params(molecule: &MoleculeParams) -> String {
    let r = molecule.record();
    format!(
        "name = {}\nde_ev = {}\nre_angstrom = {}\nmu_amu = {}\na = {}\n",
        molecule.name(),
        r.de_ev,
        r.re_angstrom,
        r.mu_amu,
        r.a
    )
}
