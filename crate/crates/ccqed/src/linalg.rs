//! Dense linear algebra kernels: a small square-matrix type, a cyclic Jacobi
//! eigensolver for real symmetric matrices, and a one-sided Jacobi SVD used as
//! the second, independent entropy route.
//!
//! Everything here is deterministic: fixed cyclic rotation order, no pivoting,
//! no randomness. Two runs on the same input produce bit-identical output.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Maximum number of Jacobi sweeps before the solver reports failure.
pub const MAX_SWEEPS: usize = 100;

/// Dense square matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Matrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "ragged rows");
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// y = A x
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// True when the matrix equals its transpose bit for bit.
    pub fn is_symmetric_exact(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self[(i, j)].to_bits() != self[(j, i)].to_bits() {
                    return false;
                }
            }
        }
        true
    }

    /// Kronecker product; index of the left factor is most significant.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = Matrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Full eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted ascending; `vectors` holds the matching orthonormal
/// eigenvectors as columns; `residuals[k]` is ‖A v_k − λ_k v_k‖₂.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub residuals: Vec<f64>,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        (0..self.vectors.dim())
            .map(|i| self.vectors[(i, k)])
            .collect()
    }
}

/// Diagonalize a real symmetric matrix with cyclic Jacobi rotations.
///
/// Convergence: off-diagonal Frobenius norm below 1e-14·‖A‖_F, capped at
/// [`MAX_SWEEPS`] sweeps. The rotation schedule is a fixed (p, q) cycle, so
/// the output is deterministic.
pub fn jacobi_eigen(matrix: &Matrix) -> Result<EigenDecomposition> {
    let n = matrix.dim();
    let mut a = matrix.clone();
    let mut v = Matrix::identity(n);
    let norm = matrix.frobenius_norm();
    let target = 1e-14 * norm;

    let mut converged = norm == 0.0 || n < 2;
    if !converged {
        for _sweep in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        // the cap may have been reached exactly when the last sweep finished the job
        if !converged && off_diagonal_norm(&a) <= target {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_norm: off_diagonal_norm(&a),
        });
    }

    // sort ascending; ties broken by original index for determinism
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));

    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Matrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, k)];
        }
    }

    let residuals = (0..n)
        .map(|k| {
            let vk: Vec<f64> = (0..n).map(|i| vectors[(i, k)]).collect();
            let av = matrix.matvec(&vk);
            av.iter()
                .zip(&vk)
                .map(|(x, y)| (x - values[k] * y).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect();

    Ok(EigenDecomposition {
        values,
        vectors,
        residuals,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating a[(p, q)], accumulated into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    // stable tangent of the rotation angle
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();

    let app = a[(p, p)];
    let aqq = a[(q, q)];
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for i in 0..n {
        if i != p && i != q {
            let aip = a[(i, p)];
            let aiq = a[(i, q)];
            a[(i, p)] = c * aip - s * aiq;
            a[(p, i)] = a[(i, p)];
            a[(i, q)] = s * aip + c * aiq;
            a[(q, i)] = a[(i, q)];
        }
    }
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = c * vip - s * viq;
        v[(i, q)] = s * vip + c * viq;
    }
}

/// Singular values of a rectangular matrix (row-major `rows`×`cols`) by
/// one-sided Jacobi: columns are orthogonalized in place and the singular
/// values are the final column norms, sorted descending.
///
/// This never forms MᵀM or MMᵀ, which keeps it independent of the
/// density-matrix eigenvalue route it cross-checks.
pub fn singular_values(m: &[f64], rows: usize, cols: usize) -> Result<Vec<f64>> {
    assert_eq!(m.len(), rows * cols);
    let mut a = m.to_vec();
    let col = |a: &[f64], j: usize, r: usize| a[r * cols + j];
    // ‖M‖_F² is rotation-invariant; columns below (ε‖M‖)² are numerically
    // zero and must be left alone or roundoff residue keeps the sweep busy
    // forever (all residue columns of a low-rank reshape are parallel)
    let frob2: f64 = a.iter().map(|x| x * x).sum();
    let floor = f64::EPSILON * f64::EPSILON * frob2;

    let mut converged = cols < 2;
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols - 1 {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for r in 0..rows {
                    let x = col(&a, p, r);
                    let y = col(&a, q, r);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if alpha <= floor || beta <= floor {
                    continue;
                }
                // threshold sits above the accumulated-roundoff noise floor
                // of the column dot products, or the sweep never settles
                if gamma.abs() <= 1e-14 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = c * t;
                for r in 0..rows {
                    let x = a[r * cols + p];
                    let y = a[r * cols + q];
                    a[r * cols + p] = c * x - s * y;
                    a[r * cols + q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_norm: f64::NAN,
        });
    }

    let mut sv: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|r| col(&a, j, r).powi(2)).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_matrix_eigenvalues_are_sorted_diagonal() {
        let m = Matrix::from_rows(&[&[3.0, 0.0, 0.0], &[0.0, -1.0, 0.0], &[0.0, 0.0, 2.0]]);
        let eig = jacobi_eigen(&m).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0, 3.0]);
        // permutation vectors
        assert_eq!(eig.eigenvector(0)[1].abs(), 1.0);
        assert_eq!(eig.eigenvector(1)[2].abs(), 1.0);
        assert_eq!(eig.eigenvector(2)[0].abs(), 1.0);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[0, g], [g, d]] has eigenvalues d/2 ∓ sqrt(d²/4 + g²)
        let (g, d) = (0.7, 1.3);
        let m = Matrix::from_rows(&[&[0.0, g], &[g, d]]);
        let eig = jacobi_eigen(&m).unwrap();
        let r = (d * d / 4.0 + g * g).sqrt();
        assert_abs_diff_eq!(eig.values[0], d / 2.0 - r, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], d / 2.0 + r, epsilon = 1e-14);
    }

    #[test]
    fn trace_and_reconstruction() {
        // fixed pseudo-random symmetric matrix
        let n = 8;
        let mut m = Matrix::zeros(n);
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..n {
            for j in 0..=i {
                let x = next();
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        let eig = jacobi_eigen(&m).unwrap();
        let norm = m.frobenius_norm();
        assert!((eig.values.iter().sum::<f64>() - m.trace()).abs() <= 1e-10 * norm);
        // ‖VΛVᵀ − M‖_max
        let mut max_err: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += eig.vectors[(i, k)] * eig.values[k] * eig.vectors[(j, k)];
                }
                max_err = max_err.max((s - m[(i, j)]).abs());
            }
        }
        assert!(max_err <= 1e-9 * norm);
        // orthogonality and residuals
        for k in 0..n {
            assert!(eig.residuals[k] <= 1e-10 * norm);
            for l in k + 1..n {
                let dot: f64 = (0..n)
                    .map(|i| eig.vectors[(i, k)] * eig.vectors[(i, l)])
                    .sum();
                assert!(dot.abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn deterministic_bit_identical() {
        let m = Matrix::from_rows(&[&[1.0, 0.5, 0.25], &[0.5, -2.0, 0.125], &[0.25, 0.125, 0.75]]);
        let a = jacobi_eigen(&m).unwrap();
        let b = jacobi_eigen(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors.data(), b.vectors.data());
    }

    #[test]
    fn non_convergence_reported_for_nan_input() {
        let m = Matrix::from_rows(&[&[f64::NAN, 1.0], &[1.0, 0.0]]);
        assert!(matches!(
            jacobi_eigen(&m),
            Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                ..
            })
        ));
    }

    #[test]
    fn singular_values_of_known_matrix() {
        // diag(3, 2) padded with a zero row: singular values 3, 2
        let m = [3.0, 0.0, 0.0, 2.0, 0.0, 0.0];
        let sv = singular_values(&m, 3, 2).unwrap();
        assert_abs_diff_eq!(sv[0], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sv[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn singular_values_match_gram_eigenvalues() {
        let m = [0.6, -0.2, 0.3, 0.9, -0.5, 0.1, 0.4, 0.7];
        let (rows, cols) = (4, 2);
        let sv = singular_values(&m, rows, cols).unwrap();
        // Gram matrix route
        let mut gram = Matrix::zeros(cols);
        for i in 0..cols {
            for j in 0..cols {
                gram[(i, j)] = (0..rows).map(|r| m[r * cols + i] * m[r * cols + j]).sum();
            }
        }
        let eig = jacobi_eigen(&gram).unwrap();
        assert_abs_diff_eq!(sv[0] * sv[0], eig.values[1], epsilon = 1e-12);
        assert_abs_diff_eq!(sv[1] * sv[1], eig.values[0], epsilon = 1e-12);
    }

    #[test]
    fn kron_ordering_left_factor_most_significant() {
        let a = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let b = Matrix::identity(3);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 6);
        assert_eq!(k[(0, 3)], 1.0);
        assert_eq!(k[(1, 4)], 1.0);
        assert_eq!(k[(2, 5)], 1.0);
        assert_eq!(k[(3, 0)], 0.0);
    }
}
