//! Reference negative eigenvalues (eV) used as golden data, and the index
//! sets of the energy sweeps.

use alloc::format;
use alloc::string::String;

/// One printed table cell: `−E` in eV exactly as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenValue {
    pub molecule: &'static str,
    pub n: usize,
    pub ell: u32,
    pub printed: &'static str,
}

impl GoldenValue {
    pub fn neg_energy_ev(&self) -> f64 {
        self.printed.parse().expect("golden values are valid decimals")
    }

    /// Digits after the decimal point.
    pub fn decimals(&self) -> usize {
        self.printed.split_once('.').map_or(0, |(_, f)| f.len())
    }
}

const fn g(molecule: &'static str, n: usize, ell: u32, printed: &'static str) -> GoldenValue {
    GoldenValue {
        molecule,
        n,
        ell,
        printed,
    }
}

/// Low-lying states, `n ≤ 2`, `ℓ ≤ 2`; 8 decimals.
pub const TABLE2: [GoldenValue; 36] = [
    g("H2", 0, 0, "4.47601313"),
    g("H2", 0, 1, "4.46122852"),
    g("H2", 0, 2, "4.43179975"),
    g("H2", 1, 0, "3.96231534"),
    g("H2", 1, 1, "3.94811647"),
    g("H2", 1, 2, "3.91986423"),
    g("H2", 2, 0, "3.47991882"),
    g("H2", 2, 1, "3.46633875"),
    g("H2", 2, 2, "3.43932836"),
    g("LiH", 0, 0, "2.42886321"),
    g("LiH", 0, 1, "2.42702210"),
    g("LiH", 0, 2, "2.42334244"),
    g("LiH", 1, 0, "2.26054805"),
    g("LiH", 1, 1, "2.25875559"),
    g("LiH", 1, 2, "2.25517324"),
    g("LiH", 2, 0, "2.09827611"),
    g("LiH", 2, 1, "2.09653304"),
    g("LiH", 2, 2, "2.09304950"),
    g("HCl", 0, 0, "4.43556394"),
    g("HCl", 0, 1, "4.43297753"),
    g("HCl", 0, 2, "4.42780630"),
    g("HCl", 1, 0, "4.07971006"),
    g("HCl", 1, 1, "4.07720144"),
    g("HCl", 1, 2, "4.07218579"),
    g("HCl", 2, 0, "3.73873384"),
    g("HCl", 2, 1, "3.73630382"),
    g("HCl", 2, 2, "3.73144539"),
    g("CO", 0, 0, "11.09153532"),
    g("CO", 0, 1, "11.09105875"),
    g("CO", 0, 2, "11.09010565"),
    g("CO", 1, 0, "10.82582206"),
    g("CO", 1, 1, "10.82534959"),
    g("CO", 1, 2, "10.82440465"),
    g("CO", 2, 0, "10.56333028"),
    g("CO", 2, 1, "10.56286190"),
    g("CO", 2, 2, "10.56192516"),
];

/// High-lying states, `ℓ ∈ {10, 20, 25}`; 7 decimals.
pub const TABLE3: [GoldenValue; 36] = [
    g("H2", 0, 10, "3.7247470"),
    g("H2", 3, 10, "2.3833482"),
    g("H2", 5, 10, "1.6526901"),
    g("H2", 0, 20, "2.0840635"),
    g("H2", 3, 20, "1.0423209"),
    g("H2", 5, 20, "0.5237656"),
    g("H2", 0, 25, "1.1659941"),
    g("H2", 3, 25, "0.3405278"),
    g("H2", 4, 25, "0.1405719"),
    g("LiH", 0, 10, "2.3288546"),
    g("LiH", 3, 10, "1.8502014"),
    g("LiH", 5, 10, "1.5615170"),
    g("LiH", 0, 20, "2.0600120"),
    g("LiH", 3, 20, "1.6044463"),
    g("LiH", 5, 20, "1.3316820"),
    g("LiH", 0, 25, "1.8719967"),
    g("LiH", 3, 25, "1.4335914"),
    g("LiH", 5, 25, "1.1726358"),
    g("HCl", 0, 10, "4.2940924"),
    g("HCl", 3, 10, "3.2841469"),
    g("HCl", 5, 10, "2.6854833"),
    g("HCl", 0, 20, "3.9038526"),
    g("HCl", 3, 20, "2.9306329"),
    g("HCl", 5, 20, "2.3571828"),
    g("HCl", 0, 25, "3.6222352"),
    g("HCl", 3, 25, "2.6764118"),
    g("HCl", 5, 25, "2.1218117"),
    g("CO", 0, 10, "11.0653333"),
    g("CO", 3, 10, "10.2785342"),
    g("CO", 5, 10, "9.7701123"),
    g("CO", 0, 20, "10.9915901"),
    g("CO", 3, 20, "10.2066975"),
    g("CO", 5, 20, "9.6995563"),
    g("CO", 0, 25, "10.9369716"),
    g("CO", 3, 25, "10.1534940"),
    g("CO", 5, 25, "9.6473034"),
];

pub fn table(which: u8) -> Option<&'static [GoldenValue]> {
    match which {
        2 => Some(&TABLE2),
        3 => Some(&TABLE3),
        _ => None,
    }
}

/// Rotational states cross-checked against Numerov shooting, spread over
/// both tables: `(molecule, n, ℓ)`.
pub const NUMEROV_SAMPLE: [(&str, usize, u32); 12] = [
    ("H2", 0, 1),
    ("H2", 2, 2),
    ("H2", 3, 20),
    ("H2", 4, 25),
    ("LiH", 1, 2),
    ("LiH", 3, 25),
    ("LiH", 5, 10),
    ("HCl", 0, 10),
    ("HCl", 5, 20),
    ("CO", 2, 1),
    ("CO", 3, 10),
    ("CO", 5, 25),
];

/// `ℓ` curves of the energy-versus-`n` sweep.
pub const SWEEP_ELLS: [u32; 6] = [0, 5, 10, 15, 20, 25];
/// `n` curves of the energy-versus-`ℓ` sweep.
pub const SWEEP_NS: [usize; 6] = [0, 3, 6, 9, 12, 15];
/// `ℓ` range of the energy-versus-`ℓ` sweep.
pub const SWEEP_MAX_ELL: u32 = 25;

/// `n` curves plotted for a molecule; H2 only has room for the first five.
pub fn sweep_ns(molecule: &str) -> &'static [usize] {
    if molecule.eq_ignore_ascii_case("H2") {
        &SWEEP_NS[..5]
    } else {
        &SWEEP_NS
    }
}

/// Cuts `value` to `decimals` places without rounding, the way the
/// reference tables were produced.
///
/// Three guard digits are rounded first so that a value sitting a few ulps
/// under a decimal boundary is not pushed down a whole last digit.
pub fn truncate_to(value: f64, decimals: usize) -> String {
    let s = format!("{:.*}", decimals + 3, value);
    String::from(&s[..s.len() - 3])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_complete() {
        for t in [&TABLE2, &TABLE3] {
            for name in crate::units::BUILTIN_NAMES {
                assert_eq!(t.iter().filter(|g| g.molecule == name).count(), 9);
            }
        }
        assert!(TABLE2.iter().all(|g| g.decimals() == 8 && g.n <= 2 && g.ell <= 2));
        assert!(TABLE3.iter().all(|g| g.decimals() == 7 && g.n <= 5 && g.ell >= 10));
        assert_eq!(TABLE2[0].neg_energy_ev(), 4.47601313);
        assert!(table(4).is_none());
    }

    #[test]
    fn truncation() {
        assert_eq!(truncate_to(4.476013139, 8), "4.47601313");
        assert_eq!(truncate_to(1.2345678999, 8), "1.23456789");
        assert_eq!(truncate_to(0.1405719999, 7), "0.1405719");
        assert_eq!(truncate_to(2.5, 2), "2.50");
        // guard digits absorb ulp-level noise
        assert_eq!(truncate_to(3.999999999999, 8), "4.00000000");
    }

    #[test]
    fn h2_sweep_has_five_curves() {
        assert_eq!(sweep_ns("H2"), &[0, 3, 6, 9, 12]);
        assert_eq!(sweep_ns("CO").len(), 6);
    }
}
