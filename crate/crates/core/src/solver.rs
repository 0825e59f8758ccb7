//! GPS Hamiltonian assembly, eigensolution, bound-state selection and the
//! top-level `solve` driver with automatic `r_max` escalation.
//!
//! On the interior nodes `j = 1..N−1` the radial kinetic operator becomes
//!
//! ```text
//! S_kj = D2_kj · P_N(x_j) / (P_N(x_k) · r'_k · r'_j)
//! ```
//!
//! which is symmetric because the interior entries of `D2` carry the factor
//! `P_N(x_k)/P_N(x_j)`. The eigenvector `A` of `H = −S/(2μ) + diag(v)` gives
//! the wavefunction as `ψ(r_j) = A_j P_N(x_j) / sqrt(r'_j)`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::eigen::{symmetric_eigen, SymmetricEigen};
use crate::error::{Error, Result};
use crate::lgl::LglBasis;
use crate::mapping::{MapParams, MappedGrid};
use crate::matrix::Matrix;
use crate::morse::{effective_potential, EffectivePotentialSpec, MorseLambda};
use crate::units::MoleculeParams;

/// Default map scale in bohr.
pub const DEFAULT_L: f64 = 3.0;
pub const DEFAULT_R_MAX: f64 = 200.0;
/// Smallest order `recommended_order` returns.
pub const BASE_ORDER: usize = 300;
pub const TAIL_TOLERANCE: f64 = 1e-8;
pub const MAX_ESCALATIONS: u32 = 3;

/// Energies closer than this (relative) are ordered by antinode position.
const NEAR_DEGENERATE: f64 = 1e-12;
/// Samples below this fraction of the peak are ignored when locating
/// antinodes and counting nodes; the classically forbidden region near
/// `r = 0` is pure rounding noise.
const SAMPLE_FLOOR: f64 = 1e-6;

/// Supplies the LGL basis for a given order; lets callers share grids
/// across molecules and `ℓ` values.
pub trait BasisCache {
    fn basis(&self, order: usize) -> Result<Arc<LglBasis>>;
}

/// Builds every basis from scratch.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoCache;

impl BasisCache for NoCache {
    fn basis(&self, order: usize) -> Result<Arc<LglBasis>> {
        Ok(Arc::new(LglBasis::new(order)?))
    }
}

/// Smallest multiple of 50 that is at least `7.5 λ`, and never below
/// [`BASE_ORDER`]. Enough to converge every s-wave level to ~1e-12 hartree.
pub fn recommended_order(molecule: &MoleculeParams) -> usize {
    let lam = MorseLambda::of(molecule).lambda;
    let n = libm::ceil(7.5 * lam / 50.0) as usize * 50;
    n.max(BASE_ORDER)
}

/// Mapped grid plus the symmetric kinetic matrix; independent of the
/// molecule and of `ℓ`.
#[derive(Debug, Clone)]
pub struct Discretization {
    basis: Arc<LglBasis>,
    grid: Arc<MappedGrid>,
    kinetic: Matrix,
    kinetic_asymmetry: f64,
}

impl Discretization {
    pub fn new(basis: Arc<LglBasis>, map: MapParams) -> Result<Self> {
        let grid = MappedGrid::from_lgl(basis.grid.clone(), map)?;
        let n = grid.order();
        let m = n - 1;
        let p = grid.lgl().pn_at_nodes();
        let rp = grid.rprime();
        let d2 = basis.d2.entries();
        let mut kinetic = Matrix::from_fn(m, m, |a, b| {
            let (k, j) = (a + 1, b + 1);
            d2[(k, j)] * p[j] / (p[k] * rp[k] * rp[j])
        });
        let kinetic_asymmetry = kinetic.max_asymmetry();
        for a in 0..m {
            for b in (a + 1)..m {
                let s = 0.5 * (kinetic[(a, b)] + kinetic[(b, a)]);
                kinetic[(a, b)] = s;
                kinetic[(b, a)] = s;
            }
        }
        Ok(Self {
            basis,
            grid: Arc::new(grid),
            kinetic,
            kinetic_asymmetry,
        })
    }

    pub fn build(order: usize, map: MapParams) -> Result<Self> {
        Self::new(NoCache.basis(order)?, map)
    }

    pub fn basis(&self) -> &LglBasis {
        &self.basis
    }

    pub fn grid(&self) -> &Arc<MappedGrid> {
        &self.grid
    }

    pub fn order(&self) -> usize {
        self.grid.order()
    }

    /// Symmetrized `S` on the interior nodes.
    pub fn kinetic(&self) -> &Matrix {
        &self.kinetic
    }

    /// `max |S_kj − S_jk|` before symmetrization.
    pub fn kinetic_asymmetry(&self) -> f64 {
        self.kinetic_asymmetry
    }
}

/// Dense `(N−1)×(N−1)` Hamiltonian for one molecule and `ℓ`.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    entries: Matrix,
    potential: Vec<f64>,
    raw_asymmetry: f64,
    molecule: String,
    ell: u32,
    order: usize,
    map: MapParams,
}

impl HamiltonianMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    /// `v_eff(r_j)` at the interior nodes, as evaluated for the diagonal.
    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    /// `max |H_ij − H_ji| / max |H|` before symmetrization.
    pub fn relative_asymmetry(&self) -> f64 {
        self.raw_asymmetry / self.entries.max_abs()
    }

    pub fn molecule(&self) -> &str {
        &self.molecule
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn map(&self) -> &MapParams {
        &self.map
    }
}

pub fn assemble_hamiltonian(
    disc: &Discretization,
    molecule: &MoleculeParams,
    ell: u32,
) -> Result<HamiltonianMatrix> {
    let grid = &disc.grid;
    let n = grid.order();
    let spec = EffectivePotentialSpec::new(molecule.clone(), ell);
    let potential = grid.r()[1..n]
        .iter()
        .map(|&r| effective_potential(r, &spec))
        .collect::<Result<Vec<f64>>>()?;
    let scale = -0.5 / molecule.mu();
    let mut entries = disc.kinetic.clone();
    for (i, v) in potential.iter().enumerate() {
        let row = entries.row_mut(i);
        for s in row.iter_mut() {
            *s *= scale;
        }
        row[i] += v + grid.vm()[i + 1];
    }
    Ok(HamiltonianMatrix {
        entries,
        potential,
        raw_asymmetry: disc.kinetic_asymmetry * scale.abs(),
        molecule: molecule.name().to_string(),
        ell,
        order: n,
        map: *grid.map(),
    })
}

/// All eigenpairs of `h`, eigenvalues ascending.
pub fn solve_spectrum(h: &HamiltonianMatrix) -> Result<SymmetricEigen> {
    symmetric_eigen(&h.entries)
}

/// One ro-vibrational level.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub n: usize,
    pub ell: u32,
    /// Hartree.
    pub energy: f64,
    /// `ψ(r_j)` at the interior nodes, bohr^(-1/2); normalized, positive at
    /// the innermost antinode.
    pub psi: Vec<f64>,
    pub grid: Arc<MappedGrid>,
}

impl BoundState {
    /// Interior radii matching `psi`.
    pub fn r(&self) -> &[f64] {
        let n = self.grid.order();
        &self.grid.r()[1..n]
    }

    /// `∫ ψ² dr` by mapped LGL quadrature.
    pub fn norm(&self) -> f64 {
        interior_norm(&self.grid, &self.psi)
    }

    /// Sign changes in `psi`, ignoring samples at rounding level.
    pub fn node_count(&self) -> usize {
        let floor = SAMPLE_FLOOR * peak(&self.psi);
        let mut last = 0.0;
        let mut count = 0;
        for &v in self.psi.iter().filter(|v| v.abs() > floor) {
            if last * v < 0.0 {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// Radius of the innermost local maximum of `|ψ|`.
    pub fn innermost_antinode(&self) -> f64 {
        self.r()[innermost_antinode_index(&self.psi)]
    }
}

fn peak(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn interior_norm(grid: &MappedGrid, psi: &[f64]) -> f64 {
    let w = &grid.lgl().weights()[1..];
    let rp = &grid.rprime()[1..];
    psi.iter()
        .zip(w)
        .zip(rp)
        .map(|((p, w), rp)| p * p * w * rp)
        .sum()
}

fn innermost_antinode_index(psi: &[f64]) -> usize {
    let floor = 1e-3 * peak(psi);
    let m = psi.len();
    (0..m)
        .find(|&j| {
            let a = psi[j].abs();
            a > floor
                && (j == 0 || a >= psi[j - 1].abs())
                && (j + 1 == m || a >= psi[j + 1].abs())
        })
        .unwrap_or(0)
}

/// `ψ_j = A_j P_N(x_j)/sqrt(r'_j)`, normalized and sign-fixed.
fn reconstruct(grid: &MappedGrid, a: &[f64]) -> Vec<f64> {
    let p = &grid.lgl().pn_at_nodes()[1..];
    let rp = &grid.rprime()[1..];
    let mut psi: Vec<f64> = a
        .iter()
        .zip(p)
        .zip(rp)
        .map(|((a, p), rp)| a * p / libm::sqrt(*rp))
        .collect();
    let norm = libm::sqrt(interior_norm(grid, &psi));
    let sign = if psi[innermost_antinode_index(&psi)] < 0.0 {
        -1.0
    } else {
        1.0
    };
    for v in &mut psi {
        *v *= sign / norm;
    }
    psi
}

/// What a [`solve`] call did to get its answer.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub order: usize,
    pub l: f64,
    /// Final `r_max` after any escalation.
    pub r_max: f64,
    pub escalations: u32,
    /// False when a negative eigenvalue still failed the tail check.
    pub converged: bool,
    /// Negative eigenvalues beyond the accepted states.
    pub rejected: usize,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub molecule: String,
    pub ell: u32,
    /// Strictly increasing in energy, labeled `n = 0, 1, …`.
    pub states: Vec<BoundState>,
    pub report: ConvergenceReport,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn state(&self, n: usize) -> Result<&BoundState> {
        self.states.get(n).ok_or(Error::NoSuchBoundState {
            n,
            max_n: self.states.len().saturating_sub(1),
        })
    }
}

/// Selects bound states from a full eigendecomposition.
///
/// Negative eigenvalues are taken in ascending order while their
/// wavefunction passes the tail check `|ψ_{N−1}| ≤ tail_tolerance · max|ψ|`;
/// the first failure ends the list, since every later label would be
/// shifted by it.
pub fn bound_states(
    eig: &SymmetricEigen,
    disc: &Discretization,
    molecule: &MoleculeParams,
    ell: u32,
    tail_tolerance: f64,
) -> Spectrum {
    let grid = &disc.grid;
    let mut candidates: Vec<(f64, Vec<f64>)> = eig
        .values
        .iter()
        .enumerate()
        .take_while(|(_, &e)| e < 0.0)
        .map(|(i, &e)| (e, reconstruct(grid, eig.vector(i))))
        .collect();
    // Ties go to the state whose innermost antinode lies further in.
    for i in 1..candidates.len() {
        let (e0, e1) = (candidates[i - 1].0, candidates[i].0);
        if (e1 - e0).abs() <= NEAR_DEGENERATE * e0.abs().max(1.0) {
            let r0 = innermost_antinode_index(&candidates[i - 1].1);
            let r1 = innermost_antinode_index(&candidates[i].1);
            if r1 < r0 {
                candidates.swap(i - 1, i);
            }
        }
    }

    let negative = candidates.len();
    let mut states = Vec::new();
    for (n, (energy, psi)) in candidates.into_iter().enumerate() {
        let tail = psi.last().map_or(0.0, |v| v.abs());
        if tail > tail_tolerance * peak(&psi) {
            break;
        }
        states.push(BoundState {
            n,
            ell,
            energy,
            psi,
            grid: Arc::clone(grid),
        });
    }
    let rejected = negative - states.len();
    Spectrum {
        molecule: molecule.name().to_string(),
        ell,
        report: ConvergenceReport {
            order: grid.order(),
            l: grid.map().l(),
            r_max: grid.map().r_max(),
            escalations: 0,
            converged: rejected == 0,
            rejected,
            note: if negative == 0 {
                Some("no negative eigenvalues; the potential supports no bound state on this grid")
            } else if states.is_empty() {
                Some("every negative eigenvalue failed the tail check")
            } else {
                None
            },
        },
        states,
    }
}

/// Which states a solve must resolve before it stops escalating `r_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requested {
    /// Every negative eigenvalue must pass the tail check.
    All,
    /// States `0..=n` must be present (or provably absent).
    UpTo(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    /// `None` picks [`recommended_order`].
    pub order: Option<usize>,
    pub l: f64,
    pub r_max: f64,
    pub max_escalations: u32,
    pub tail_tolerance: f64,
    pub requested: Requested,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            order: None,
            l: DEFAULT_L,
            r_max: DEFAULT_R_MAX,
            max_escalations: MAX_ESCALATIONS,
            tail_tolerance: TAIL_TOLERANCE,
            requested: Requested::All,
        }
    }
}

impl SolveConfig {
    pub fn with_order(order: usize) -> Self {
        Self {
            order: Some(order),
            ..Self::default()
        }
    }

    pub fn order_for(&self, molecule: &MoleculeParams) -> usize {
        self.order.unwrap_or_else(|| recommended_order(molecule))
    }
}

pub fn solve(molecule: &MoleculeParams, ell: u32, config: &SolveConfig) -> Result<Spectrum> {
    solve_with(&NoCache, molecule, ell, config)
}

/// Solves for one `(molecule, ℓ)`, doubling `r_max` up to
/// `config.max_escalations` times while requested states fail the tail
/// check. An unresolved spectrum is still returned, with
/// `report.converged == false`.
pub fn solve_with(
    cache: &dyn BasisCache,
    molecule: &MoleculeParams,
    ell: u32,
    config: &SolveConfig,
) -> Result<Spectrum> {
    let order = config.order_for(molecule);
    let basis = cache.basis(order)?;
    let mut r_max = config.r_max;
    let mut escalations = 0;
    loop {
        let disc = Discretization::new(Arc::clone(&basis), MapParams::new(config.l, r_max)?)?;
        let h = assemble_hamiltonian(&disc, molecule, ell)?;
        let eig = solve_spectrum(&h)?;
        let mut spectrum = bound_states(&eig, &disc, molecule, ell, config.tail_tolerance);
        let satisfied = spectrum.report.rejected == 0
            || matches!(config.requested, Requested::UpTo(n) if spectrum.len() > n);
        if satisfied || escalations >= config.max_escalations {
            spectrum.report.escalations = escalations;
            spectrum.report.converged = satisfied;
            return Ok(spectrum);
        }
        r_max *= 2.0;
        escalations += 1;
    }
}

/// One cell of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyCell {
    pub order: usize,
    pub r_max: f64,
    pub energy: Result<f64>,
}

/// Energy of state `n` for every `(order, r_max)` pair at fixed `l`,
/// without escalation.
pub fn convergence_study(
    molecule: &MoleculeParams,
    ell: u32,
    n: usize,
    orders: &[usize],
    r_maxes: &[f64],
    l: f64,
) -> Vec<StudyCell> {
    let mut cells = Vec::with_capacity(orders.len() * r_maxes.len());
    for &order in orders {
        for &r_max in r_maxes {
            let config = SolveConfig {
                order: Some(order),
                l,
                r_max,
                max_escalations: 0,
                requested: Requested::UpTo(n),
                ..SolveConfig::default()
            };
            let energy = solve(molecule, ell, &config).and_then(|s| s.state(n).map(|b| b.energy));
            cells.push(StudyCell {
                order,
                r_max,
                energy,
            });
        }
    }
    cells
}

/// `max − min` over the successful cells; `None` if any cell failed.
pub fn study_spread(cells: &[StudyCell]) -> Option<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in cells {
        let e = *c.energy.as_ref().ok()?;
        lo = lo.min(e);
        hi = hi.max(e);
    }
    Some(hi - lo)
}
