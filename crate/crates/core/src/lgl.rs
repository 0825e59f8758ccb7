//! Legendre polynomials, Legendre–Gauss–Lobatto (LGL) collocation points,
//! quadrature weights, cardinal functions and differentiation matrices on
//! `x ∈ [-1, 1]`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_STEP_TOL: f64 = 1e-14;

fn check_unit_interval(x: f64) -> Result<f64> {
    if (-1.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Error::Domain {
            name: "x",
            value: x,
            domain: "[-1, 1]",
        })
    }
}

/// `(P_n(x), P'_n(x), P''_n(x))` by the Bonnet recurrence and its derivatives,
/// `P'_k = k P_{k-1} + x P'_{k-1}` and `P''_k = (k+1) P'_{k-1} + x P''_{k-1}`.
fn legendre_all(n: usize, x: f64) -> (f64, f64, f64) {
    match n {
        0 => (1.0, 0.0, 0.0),
        1 => (x, 1.0, 0.0),
        _ => {
            let (mut p_prev, mut p) = (1.0, x);
            let (mut dp, mut d2p) = (1.0, 0.0);
            for k in 2..=n {
                let kf = k as f64;
                let d2p_next = (kf + 1.0) * dp + x * d2p;
                let dp_next = kf * p + x * dp;
                let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
                p_prev = p;
                p = p_next;
                dp = dp_next;
                d2p = d2p_next;
            }
            (p, dp, d2p)
        }
    }
}

/// Evaluates `(P_N(x), P'_N(x))` for `x ∈ [-1, 1]`.
pub fn legendre_eval(order: usize, x: f64) -> Result<(f64, f64)> {
    let x = check_unit_interval(x)?;
    let (p, dp, _) = legendre_all(order, x);
    Ok((p, dp))
}

/// LGL nodes of order `N`: `x_0 = -1`, `x_N = 1` and the `N - 1` roots of
/// `P'_N` in between, in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct LglGrid {
    order: usize,
    nodes: Vec<f64>,
    pn_at_nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl LglGrid {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn pn_at_nodes(&self) -> &[f64] {
        &self.pn_at_nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// LGL quadrature of `f` over `[-1, 1]`; exact for degree ≤ 2N − 1.
    pub fn quadrature(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Cardinal function `g_j(x)`, the degree-N polynomial with
    /// `g_j(x_k) = δ_jk`.
    pub fn cardinal(&self, j: usize, x: f64) -> Result<f64> {
        cardinal_eval(self, j, x)
    }
}

/// Root of `P'_N` inside `(lo, hi)` by Newton's method, falling back to
/// bisection whenever a step leaves the bracket.
fn derivative_root(order: usize, j: usize, mut lo: f64, mut hi: f64, guess: f64) -> Result<f64> {
    let f_lo = legendre_all(order, lo).1;
    let mut x = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let (_, f, df) = legendre_all(order, x);
        if f == 0.0 {
            return Ok(x);
        }
        if (f < 0.0) == (f_lo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if df != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= NEWTON_STEP_TOL {
            return Ok(polish(order, x));
        }
    }
    Err(Error::NumericalFailure {
        stage: "LGL node search",
        index: j,
    })
}

/// One last Newton step, kept only if it lowers the residual.
fn polish(order: usize, x: f64) -> f64 {
    let (_, f, df) = legendre_all(order, x);
    if df == 0.0 {
        return x;
    }
    let y = x - f / df;
    if legendre_all(order, y).1.abs() < f.abs() {
        y
    } else {
        x
    }
}

/// Builds the LGL grid of order `N ≥ 2`.
///
/// Interior node `j` is bracketed by the Chebyshev–Lobatto midpoints
/// `-cos(π(j ± ½)/N)` and started from `-cos(πj/N)`. Only the lower half is
/// searched; the upper half is mirrored so the node set is exactly symmetric.
pub fn lgl_nodes(order: usize) -> Result<LglGrid> {
    if order < 2 {
        return Err(Error::InvalidArgument {
            name: "order",
            value: order as f64,
        });
    }
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n + 1];
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    for j in 1..=n / 2 {
        let x = if 2 * j == n {
            // P'_N is odd for even N.
            0.0
        } else {
            let jf = j as f64;
            let lo = -libm::cos(PI * (jf - 0.5) / nf);
            let hi = -libm::cos(PI * (jf + 0.5) / nf);
            derivative_root(n, j, lo, hi, -libm::cos(PI * jf / nf))?
        };
        nodes[j] = x;
        nodes[n - j] = -x;
    }

    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut pn_at_nodes = vec![0.0; n + 1];
    for j in 0..=n / 2 {
        let p = if j == 0 { parity } else { legendre_all(n, nodes[j]).0 };
        pn_at_nodes[j] = p;
        pn_at_nodes[n - j] = parity * p;
    }
    let scale = nf * (nf + 1.0);
    let weights = pn_at_nodes.iter().map(|p| 2.0 / (scale * p * p)).collect();

    Ok(LglGrid {
        order: n,
        nodes,
        pn_at_nodes,
        weights,
    })
}

/// `g_j(x) = -(1 − x²) P'_N(x) / (N(N+1) P_N(x_j) (x − x_j))`, with the
/// removable singularity at `x = x_j` returning exactly 1.
pub fn cardinal_eval(grid: &LglGrid, j: usize, x: f64) -> Result<f64> {
    let n = grid.order;
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let x = check_unit_interval(x)?;
    let xj = grid.nodes[j];
    if x == xj {
        return Ok(1.0);
    }
    // At another node the formula reduces to P'_N(x_k), zero only to rounding.
    if grid.nodes.binary_search_by(|v| v.total_cmp(&x)).is_ok() {
        return Ok(0.0);
    }
    let nf = n as f64;
    let (_, dp, _) = legendre_all(n, x);
    Ok(-(1.0 - x * x) * dp / (nf * (nf + 1.0) * grid.pn_at_nodes[j] * (x - xj)))
}

/// Dense differentiation matrix acting on nodal values `f(x_0..=x_N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffMatrix {
    order: usize,
    entries: Matrix,
}

impl DiffMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Nodal derivative values of the interpolant through `values`.
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        self.entries.matvec(values)
    }
}

/// `D_kj = g'_j(x_k)`: `P_N(x_k) / (P_N(x_j)(x_k − x_j))` off the diagonal.
///
/// Analytically the diagonal is `∓N(N+1)/4` in the corners and zero in the
/// interior. It is stored as the negative sum of the off-diagonal row
/// entries instead, which agrees with those values to rounding but makes
/// every row annihilate constants exactly; with the literal values the
/// rounding in the nodes leaves row sums of order 1e-6 at N = 300 and the
/// error is squared into `D1·D1`.
pub fn first_derivative_matrix(grid: &LglGrid) -> DiffMatrix {
    let n = grid.order;
    let x = &grid.nodes;
    let p = &grid.pn_at_nodes;
    let mut entries = Matrix::from_fn(n + 1, n + 1, |k, j| {
        if k != j {
            p[k] / (p[j] * (x[k] - x[j]))
        } else {
            0.0
        }
    });
    for k in 0..=n {
        let row = entries.row_mut(k);
        let off: f64 = row.iter().sum();
        row[k] = -off;
        // One correction pass absorbs the rounding of the first sum.
        let residual: f64 = row.iter().sum();
        row[k] -= residual;
    }
    DiffMatrix { order: n, entries }
}

/// Closed-form diagonal of the first-derivative matrix.
pub fn analytic_first_derivative_diagonal(order: usize, k: usize) -> f64 {
    let corner = (order * (order + 1)) as f64 / 4.0;
    if k == 0 {
        -corner
    } else if k == order {
        corner
    } else {
        0.0
    }
}

/// Second-derivative matrix as the square of the first.
pub fn second_derivative_matrix(d1: &DiffMatrix) -> DiffMatrix {
    DiffMatrix {
        order: d1.order,
        entries: d1.entries.matmul(&d1.entries),
    }
}

/// Grid plus its differentiation matrices; built once per order and shared.
#[derive(Debug, Clone, PartialEq)]
pub struct LglBasis {
    pub grid: LglGrid,
    pub d1: DiffMatrix,
    pub d2: DiffMatrix,
}

impl LglBasis {
    pub fn new(order: usize) -> Result<Self> {
        let grid = lgl_nodes(order)?;
        let d1 = first_derivative_matrix(&grid);
        let d2 = second_derivative_matrix(&d1);
        Ok(Self { grid, d1, d2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::vec::Vec;

    const ORDERS: [usize; 6] = [2, 3, 10, 50, 100, 300];

    #[test]
    fn legendre_low_orders() {
        assert_eq!(legendre_eval(0, 0.3).unwrap(), (1.0, 0.0));
        assert_eq!(legendre_eval(1, 0.3).unwrap(), (0.3, 1.0));
        let (p, dp) = legendre_eval(3, 0.5).unwrap();
        assert_abs_diff_eq!(p, -0.4375, epsilon = 1e-15);
        assert_abs_diff_eq!(dp, 0.375, epsilon = 1e-15);
    }

    #[test]
    fn legendre_endpoint_values() {
        for n in [2usize, 5, 40, 301] {
            let nf = n as f64;
            let (p, dp) = legendre_eval(n, 1.0).unwrap();
            assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(dp, nf * (nf + 1.0) / 2.0, epsilon = 1e-9 * nf * nf);
        }
    }

    #[test]
    fn legendre_rejects_outside_interval() {
        assert!(matches!(legendre_eval(3, 1.5), Err(Error::Domain { .. })));
        assert!(legendre_eval(3, f64::NAN).is_err());
    }

    #[test]
    fn low_order_nodes_are_analytic() {
        let g2 = lgl_nodes(2).unwrap();
        assert_eq!(g2.nodes(), &[-1.0, 0.0, 1.0]);
        let g3 = lgl_nodes(3).unwrap();
        let r = 1.0 / libm::sqrt(5.0);
        for (got, want) in g3.nodes().iter().zip([-1.0, -r, r, 1.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert!(lgl_nodes(1).is_err());
    }

    #[test]
    fn grid_invariants() {
        for n in ORDERS {
            let g = lgl_nodes(n).unwrap();
            let x = g.nodes();
            assert_eq!(x.len(), n + 1);
            assert_eq!(x[0], -1.0);
            assert_eq!(x[n], 1.0);
            assert!(x.windows(2).all(|w| w[0] < w[1]), "N={n} not increasing");
            let scale = (n * (n + 1)) as f64 / 2.0;
            for &xj in &x[1..n] {
                let (_, dp) = legendre_eval(n, xj).unwrap();
                assert!(dp.abs() <= 1e-13 * scale, "N={n}: P'_N({xj}) = {dp}");
            }
            for j in 0..=n {
                assert!((x[j] + x[n - j]).abs() <= 1e-14);
            }
            assert!(g.weights().iter().all(|&w| w > 0.0));
            let total: f64 = g.weights().iter().sum();
            assert_abs_diff_eq!(total, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn quadrature_is_exact_for_low_degree() {
        let g = lgl_nodes(300).unwrap();
        assert_abs_diff_eq!(g.quadrature(|x| x.powi(4)), 0.4, epsilon = 1e-13);
        let g = lgl_nodes(4).unwrap();
        // degree 2N − 1 = 7
        assert_abs_diff_eq!(g.quadrature(|x| x.powi(6) + x.powi(7)), 2.0 / 7.0, epsilon = 1e-14);
    }

    #[test]
    fn cardinal_delta_property() {
        for n in ORDERS {
            let g = lgl_nodes(n).unwrap();
            let mut worst: f64 = 0.0;
            for j in 0..=n {
                for (k, &xk) in g.nodes().iter().enumerate() {
                    let want = if j == k { 1.0 } else { 0.0 };
                    worst = worst.max((g.cardinal(j, xk).unwrap() - want).abs());
                }
            }
            assert!(worst <= 1e-12, "N={n}: delta error {worst}");
        }
    }

    #[test]
    fn cardinal_is_continuous_near_nodes() {
        let g = lgl_nodes(100).unwrap();
        for j in [0usize, 1, 37, 50, 99, 100] {
            for k in [0usize, 2, 50, 100] {
                let xk = g.nodes()[k];
                let x = if xk > 0.0 { xk - 1e-10 } else { xk + 1e-10 };
                let want = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(g.cardinal(j, x).unwrap(), want, epsilon = 1e-4);
            }
        }
    }

    #[test]
    fn cardinal_interior_value() {
        let g = lgl_nodes(2).unwrap();
        assert_abs_diff_eq!(g.cardinal(1, 0.5).unwrap(), 0.75, epsilon = 1e-15);
        assert_eq!(g.cardinal(1, 0.0).unwrap(), 1.0);
        assert!(matches!(g.cardinal(3, 0.0), Err(Error::IndexOutOfRange { .. })));
        assert!(g.cardinal(0, -1.2).is_err());
    }

    #[test]
    fn cardinals_interpolate_a_polynomial() {
        // Σ_j f(x_j) g_j(x) reproduces any polynomial of degree ≤ N.
        let g = lgl_nodes(8).unwrap();
        let f = |x: f64| 3.0 * x.powi(8) - x.powi(5) + 0.5 * x - 2.0;
        for x in [-0.93, -0.4, 0.1, 0.77] {
            let interp: f64 = (0..=8)
                .map(|j| f(g.nodes()[j]) * g.cardinal(j, x).unwrap())
                .sum();
            assert_abs_diff_eq!(interp, f(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn first_derivative_exact_on_polynomials() {
        let g = lgl_nodes(10).unwrap();
        let d1 = first_derivative_matrix(&g);
        let x = g.nodes();
        let ones: Vec<f64> = x.iter().map(|_| 1.0).collect();
        for v in d1.apply(&ones) {
            assert!(v.abs() <= 1e-11);
        }
        for v in d1.apply(x) {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-11);
        }
        let f: Vec<f64> = x.iter().map(|v| v.powi(10)).collect();
        for (d, xj) in d1.apply(&f).iter().zip(x) {
            assert_abs_diff_eq!(*d, 10.0 * xj.powi(9), epsilon = 1e-9);
        }
    }

    #[test]
    fn first_derivative_row_sums_vanish() {
        for n in ORDERS {
            let d1 = first_derivative_matrix(&lgl_nodes(n).unwrap());
            for k in 0..=n {
                let s: f64 = d1.entries().row(k).iter().sum();
                assert!(s.abs() <= 1e-11, "N={n} row {k}: {s}");
            }
        }
    }

    #[test]
    fn first_derivative_diagonal_matches_closed_form() {
        for n in ORDERS {
            let d1 = first_derivative_matrix(&lgl_nodes(n).unwrap());
            let corner = (n * (n + 1)) as f64 / 4.0;
            for k in 0..=n {
                let got = d1.entries()[(k, k)];
                let want = analytic_first_derivative_diagonal(n, k);
                assert!((got - want).abs() <= 1e-9 * corner, "N={n} k={k}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn second_derivative_exact_on_polynomials() {
        let g = lgl_nodes(10).unwrap();
        let d2 = second_derivative_matrix(&first_derivative_matrix(&g));
        let x = g.nodes();
        for v in d2.apply(x) {
            assert!(v.abs() <= 1e-10);
        }
        let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
        for v in d2.apply(&sq) {
            assert_abs_diff_eq!(v, 2.0, epsilon = 1e-10);
        }
        let q: Vec<f64> = x.iter().map(|v| v.powi(4)).collect();
        for (d, xj) in d2.apply(&q).iter().zip(x) {
            assert_abs_diff_eq!(*d, 12.0 * xj * xj, epsilon = 1e-8);
        }
    }

    #[test]
    fn second_derivative_converges_spectrally() {
        // Error ratios between successive doublings must keep growing, i.e.
        // faster than any fixed power of 1/N.
        let errors: Vec<f64> = [8usize, 16, 32]
            .iter()
            .map(|&n| {
                let g = lgl_nodes(n).unwrap();
                let d2 = second_derivative_matrix(&first_derivative_matrix(&g));
                let f: Vec<f64> = g.nodes().iter().map(|x| libm::sin(*x)).collect();
                d2.apply(&f)
                    .iter()
                    .zip(g.nodes())
                    .map(|(d, x)| (d + libm::sin(*x)).abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        let r1 = errors[0] / errors[1];
        assert!(r1 > 1e3, "{errors:?}");
        // N = 32 already sits at roundoff.
        assert!(errors[2] < 1e-9, "{errors:?}");
        // Algebraic convergence of order p would give r1 = 2^p; 2^10 = 1024.
        let n64 = {
            let g = lgl_nodes(64).unwrap();
            let d2 = second_derivative_matrix(&first_derivative_matrix(&g));
            let f: Vec<f64> = g.nodes().iter().map(|x| libm::sin(*x)).collect();
            d2.apply(&f)
                .iter()
                .zip(g.nodes())
                .map(|(d, x)| (d + libm::sin(*x)).abs())
                .fold(0.0, f64::max)
        };
        assert!(n64 < 1e-7, "roundoff floor grows too fast: {n64}");
    }

    #[test]
    fn basis_bundles_consistent_matrices() {
        let b = LglBasis::new(12).unwrap();
        assert_eq!(b.d2.order(), 12);
        assert_eq!(b.d2.entries(), &b.d1.entries().matmul(b.d1.entries()));
    }
}
