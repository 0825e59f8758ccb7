//! Ro-vibrational bound states of diatomic molecules in a Morse potential,
//! computed with a generalized pseudospectral (GPS) discretization.
//!
//! The radial Schrödinger equation on `r ∈ [0, r_max]` is mapped onto
//! `x ∈ [-1, 1]` by an algebraic map, collocated on Legendre–Gauss–Lobatto
//! points and reduced to a dense symmetric eigenproblem. Everything in this
//! crate works in atomic units (hartree, bohr, electron masses); conversions
//! to eV/Å/amu live in [`units`].
//!
//! The crate is `no_std` and only needs `alloc`. IO, parameter files and the
//! command-line front end live in the `morse-gps-cli` crate.
//!
//! ```
//! use morse_gps::{molecule_params, solver::{solve, SolveConfig}, units::hartree_to_ev};
//!
//! let h2 = molecule_params("H2").unwrap();
//! let spectrum = solve(&h2, 0, &SolveConfig::with_order(120)).unwrap();
//! let e0 = hartree_to_ev(spectrum.states[0].energy);
//! assert!((e0 + 4.47601313).abs() < 1e-7);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod eigen;
pub mod lgl;
pub mod mapping;
pub mod matrix;
pub mod morse;
pub mod numerov;
pub mod reference;
pub mod solver;
pub mod units;

pub use error::{Error, Result};
pub use units::{molecule_params, MoleculeParams};
