//! Dense real symmetric eigensolver: Householder reduction to tridiagonal
//! form followed by the implicit-shift QL iteration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const MAX_QL_SWEEPS: usize = 60;

/// Eigenvalues in ascending order; row `i` of `vectors` is the unit
/// eigenvector belonging to `values[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl SymmetricEigen {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        self.vectors.row(i)
    }

    /// `‖A v_i − λ_i v_i‖₂`.
    pub fn residual(&self, a: &Matrix, i: usize) -> f64 {
        let v = self.vector(i);
        let av = a.matvec(v);
        libm::sqrt(
            av.iter()
                .zip(v)
                .map(|(x, y)| {
                    let d = x - self.values[i] * y;
                    d * d
                })
                .sum(),
        )
    }
}

/// Full eigendecomposition of a symmetric matrix. Only the lower triangle
/// is read.
pub fn symmetric_eigen(a: &Matrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::Shape {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if let Some(i) = a.as_slice().iter().position(|v| !v.is_finite()) {
        return Err(Error::NumericalFailure {
            stage: "eigensolver input (non-finite entry)",
            index: i / a.cols().max(1),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(SymmetricEigen {
            values: Vec::new(),
            vectors: Matrix::zeros(0, 0),
        });
    }
    let mut v = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    // QL rotates columns of V; work on the transpose so they are rows.
    let mut z = v.transpose();
    ql_implicit(&mut d, &mut e, &mut z)?;
    sort_ascending(&mut d, &mut z);
    Ok(SymmetricEigen {
        values: d,
        vectors: z,
    })
}

/// Householder reduction. On return `d` is the diagonal, `e[1..]` the
/// subdiagonal and `v` the accumulated orthogonal transform.
fn tridiagonalize(v: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = libm::sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in &mut e[..i] {
                *ej = 0.0;
            }
            for j in 0..i {
                let f = d[j];
                v[(j, i)] = f;
                let mut g = e[j] + v[(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)`, applying every rotation to the
/// rows of `z`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut Matrix) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > f64::EPSILON * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(Error::NumericalFailure {
                        stage: "QL iteration",
                        index: l,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in &mut d[l + 2..] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    rotate_rows(z, i, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= f64::EPSILON * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// `(z_i, z_{i+1}) ← (c z_i − s z_{i+1}, s z_i + c z_{i+1})`.
fn rotate_rows(z: &mut Matrix, i: usize, c: f64, s: f64) {
    let (head, tail) = z.rows_pair_mut(i);
    for (a, b) in head.iter_mut().zip(tail.iter_mut()) {
        let h = *b;
        *b = s * *a + c * h;
        *a = c * *a - s * h;
    }
}

fn sort_ascending(d: &mut [f64], z: &mut Matrix) {
    let n = d.len();
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in (i + 1)..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            z.swap_rows(i, k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_symmetric(n: usize, seed: u64) -> Matrix {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.gen_range(-1.0..1.0);
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        a
    }

    fn check_decomposition(a: &Matrix, eig: &SymmetricEigen, tol: f64) {
        let n = a.rows();
        let norm = a.frobenius_norm().max(f64::MIN_POSITIVE);
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        for i in 0..n {
            assert!(eig.residual(a, i) <= tol * norm, "residual {i}");
        }
        let vtv = eig.vectors.matmul(&eig.vectors.transpose());
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(vtv[(i, j)], want, epsilon = tol);
            }
        }
    }

    #[test]
    fn two_by_two() {
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let eig = symmetric_eigen(&a).unwrap();
        assert_abs_diff_eq!(eig.values[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(eig.values[1], 3.0, epsilon = 1e-15);
        check_decomposition(&a, &eig, 1e-14);
    }

    #[test]
    fn diagonal_input() {
        let a = Matrix::from_rows(&[&[4.0, 0.0, 0.0], &[0.0, -3.0, 0.0], &[0.0, 0.0, -1.0]]);
        let eig = symmetric_eigen(&a).unwrap();
        assert_eq!(eig.values, vec![-3.0, -1.0, 4.0]);
        for (i, axis) in [1usize, 2, 0].into_iter().enumerate() {
            assert_abs_diff_eq!(eig.vector(i)[axis].abs(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn trivial_sizes() {
        assert!(symmetric_eigen(&Matrix::zeros(0, 0)).unwrap().is_empty());
        let eig = symmetric_eigen(&Matrix::from_rows(&[&[-2.5]])).unwrap();
        assert_eq!(eig.values, vec![-2.5]);
        assert_eq!(eig.vector(0), &[1.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            symmetric_eigen(&Matrix::zeros(2, 3)),
            Err(Error::Shape { rows: 2, cols: 3 })
        ));
        let mut a = Matrix::identity(3);
        a[(1, 1)] = f64::NAN;
        assert!(symmetric_eigen(&a).is_err());
    }

    #[test]
    fn random_reconstruction() {
        let n = 50;
        let a = random_symmetric(n, 11);
        let eig = symmetric_eigen(&a).unwrap();
        check_decomposition(&a, &eig, 1e-12);
        // A = Vᵀ Λ V with eigenvectors as rows of V.
        let mut rebuilt = Matrix::zeros(n, n);
        for k in 0..n {
            let v = eig.vector(k);
            for i in 0..n {
                for j in 0..n {
                    rebuilt[(i, j)] += eig.values[k] * v[i] * v[j];
                }
            }
        }
        let mut diff = rebuilt.clone();
        for i in 0..n {
            for j in 0..n {
                diff[(i, j)] -= a[(i, j)];
            }
        }
        assert!(diff.frobenius_norm() <= 1e-10 * a.frobenius_norm());
    }

    #[test]
    fn repeated_eigenvalues() {
        // I + 𝟙𝟙ᵀ has eigenvalue 1 with multiplicity n−1.
        let n = 6;
        let a = Matrix::from_fn(n, n, |i, j| if i == j { 2.0 } else { 1.0 });
        let eig = symmetric_eigen(&a).unwrap();
        for v in &eig.values[..n - 1] {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-13);
        }
        assert_abs_diff_eq!(eig.values[n - 1], 7.0, epsilon = 1e-13);
        check_decomposition(&a, &eig, 1e-13);
    }

    proptest! {
        #[test]
        fn decomposition_holds(n in 1usize..24, seed in 0u64..1000) {
            let a = random_symmetric(n, seed);
            let eig = symmetric_eigen(&a).unwrap();
            let trace: f64 = (0..n).map(|i| a[(i, i)]).sum();
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((trace - sum).abs() <= 1e-12 * (n as f64));
            check_decomposition(&a, &eig, 1e-12);
        }
    }
}
