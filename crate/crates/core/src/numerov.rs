//! Numerov shooting on a uniform radial grid. An independent check on the
//! GPS energies; shares nothing with it beyond the potential.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::morse::{effective_potential, EffectivePotentialSpec};
use crate::units::MoleculeParams;

/// Rescale the running solution once it passes this magnitude.
const OVERFLOW: f64 = 1e100;
/// Node-count bisection stops at this bracket width (hartree).
const COUNT_TOLERANCE: f64 = 1e-9;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumerovSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub step: f64,
    /// `(E_lo, E_hi)` in hartree.
    pub energy_bracket: (f64, f64),
}

impl NumerovSpec {
    pub fn new(r_min: f64, r_max: f64, step: f64, energy_bracket: (f64, f64)) -> Result<Self> {
        let (lo, hi) = energy_bracket;
        if !(r_min > 0.0 && r_min.is_finite()) {
            return Err(Error::InvalidArgument {
                name: "r_min",
                value: r_min,
            });
        }
        if !(r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidArgument {
                name: "r_max",
                value: r_max,
            });
        }
        if !(step > 0.0 && step < r_max - r_min) {
            return Err(Error::InvalidArgument {
                name: "step",
                value: step,
            });
        }
        if !(lo.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument {
                name: "energy_bracket.lo",
                value: lo,
            });
        }
        if hi.is_nan() || hi >= 0.0 {
            return Err(Error::InvalidArgument {
                name: "energy_bracket.hi",
                value: hi,
            });
        }
        Ok(Self {
            r_min,
            r_max,
            step,
            energy_bracket,
        })
    }

    /// `r_min = 1e-6`, `r_max = 25 r_e`, step `2e-4 r_e`, bracket
    /// `(−D_e, −1e-9)`.
    pub fn for_molecule(molecule: &MoleculeParams) -> Self {
        let re = molecule.re();
        Self {
            r_min: 1e-6,
            r_max: 25.0 * re,
            step: 2e-4 * re,
            energy_bracket: (-molecule.de(), -1e-9),
        }
    }

    pub fn with_step(self, step: f64) -> Result<Self> {
        Self::new(self.r_min, self.r_max, step, self.energy_bracket)
    }
}

/// Potential sampled once on the uniform grid.
struct Table {
    v: Vec<f64>,
    two_mu: f64,
    h2_12: f64,
}

impl Table {
    fn new(spec: &NumerovSpec, potential: &EffectivePotentialSpec) -> Result<Self> {
        let points = libm::floor((spec.r_max - spec.r_min) / spec.step) as usize + 1;
        let v = (0..points)
            .map(|i| effective_potential(spec.r_min + i as f64 * spec.step, potential))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            v,
            two_mu: 2.0 * potential.molecule.mu(),
            h2_12: spec.step * spec.step / 12.0,
        })
    }

    fn len(&self) -> usize {
        self.v.len()
    }

    /// `1 − h² f_i / 12` with `f = 2μ(V − E)`.
    fn u(&self, i: usize, e: f64) -> f64 {
        1.0 - self.h2_12 * self.two_mu * (self.v[i] - e)
    }

    /// First index where the recurrence is well conditioned.
    fn start(&self, e: f64) -> usize {
        (0..self.len() - 3)
            .find(|&i| 1.0 - self.u(i, e) < 0.5)
            .unwrap_or(self.len() - 3)
    }

    /// Outer classical turning point, kept clear of both ends.
    fn turning_point(&self, e: f64, start: usize) -> usize {
        let m = (0..self.len())
            .rev()
            .find(|&i| self.v[i] < e)
            .unwrap_or(start + 2);
        m.clamp(start + 2, self.len() - 3)
    }
}

/// Seeds `ψ ∝ r^(ℓ+1)` at `start` and `start + 1`.
fn seeds(spec: &NumerovSpec, ell: u32, start: usize) -> (f64, f64) {
    let r0 = spec.r_min + start as f64 * spec.step;
    let r1 = r0 + spec.step;
    (1.0, libm::pow(r1 / r0, f64::from(ell) + 1.0))
}

/// Runs the recurrence from `from` toward `to` (either direction), calling
/// `visit(ψ)` on every value, seeds included. Returns the last three values as
/// `(ψ_{to∓2}, ψ_{to∓1}, ψ_to)` up to a common positive factor.
fn integrate(
    table: &Table,
    e: f64,
    from: usize,
    to: usize,
    seed: (f64, f64),
    mut visit: impl FnMut(f64),
) -> [f64; 3] {
    let forward = to >= from;
    let idx = |k: usize| if forward { from + k } else { from - k };
    let steps = if forward { to - from } else { from - to };
    let (mut prev, mut cur) = seed;
    let mut before = prev;
    visit(prev);
    visit(cur);
    let (mut u_prev, mut u_cur) = (table.u(idx(0), e), table.u(idx(1), e));
    for k in 2..=steps {
        let u_next = table.u(idx(k), e);
        let mut next = ((12.0 - 10.0 * u_cur) * cur - u_prev * prev) / u_next;
        before = prev;
        prev = cur;
        if next.abs() > OVERFLOW {
            next /= OVERFLOW;
            prev /= OVERFLOW;
            before /= OVERFLOW;
        }
        cur = next;
        visit(cur);
        u_prev = u_cur;
        u_cur = u_next;
    }
    [before, prev, cur]
}

fn count_nodes(table: &Table, spec: &NumerovSpec, ell: u32, e: f64) -> usize {
    let start = table.start(e);
    let mut last = 0.0;
    let mut count = 0;
    integrate(table, e, start, table.len() - 1, seeds(spec, ell, start), |v| {
        if v != 0.0 {
            if last * v < 0.0 {
                count += 1;
            }
            last = v;
        }
    });
    count
}

/// Derivative mismatch at the outer turning point between the outward and
/// inward solutions, both scaled to 1 there.
fn mismatch(table: &Table, spec: &NumerovSpec, ell: u32, e: f64) -> f64 {
    let start = table.start(e);
    let m = table.turning_point(e, start);
    let [out_m1, out_m, out_p1] = integrate(table, e, start, m + 1, seeds(spec, ell, start), |_| {});
    let last = table.len() - 1;
    // ψ(r_max) = 0; the second value only fixes the scale.
    let [in_p1, in_m, in_m1] = integrate(table, e, last, m - 1, (0.0, 1e-30), |_| {});
    (out_p1 - out_m1) / out_m - (in_p1 - in_m1) / in_m
}

/// Number of sign changes of the outward solution on `(r_min, r_max)`.
pub fn numerov_node_count(
    e: f64,
    spec: &NumerovSpec,
    potential: &EffectivePotentialSpec,
) -> Result<usize> {
    let table = Table::new(spec, potential)?;
    Ok(count_nodes(&table, spec, potential.ell, e))
}

/// Energy (hartree) of state `n` at angular momentum `ell`.
///
/// Bisects on the node count to `1e-9` hartree, then refines on the sign of
/// the turning-point derivative mismatch when it brackets a root.
pub fn numerov_energy(
    n: usize,
    ell: u32,
    molecule: &MoleculeParams,
    spec: &NumerovSpec,
) -> Result<f64> {
    let potential = EffectivePotentialSpec::new(molecule.clone(), ell);
    let table = Table::new(spec, &potential)?;
    let (mut lo, mut hi) = spec.energy_bracket;
    let nodes = |e: f64| count_nodes(&table, spec, ell, e);
    if nodes(lo) > n || nodes(hi) <= n {
        return Err(Error::Bracket { n, lo, hi });
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= COUNT_TOLERANCE {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if nodes(mid) > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let f = |e: f64| mismatch(&table, spec, ell, e);
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    let product = f_lo * f_hi;
    if product.is_nan() || product >= 0.0 {
        return Ok(0.5 * (lo + hi));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
