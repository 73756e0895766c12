//! Symmetric eigendecomposition by cyclic Jacobi sweeps.
//!
//! Kept in-repo rather than delegated so results are bit-reproducible
//! across platforms and the crate stays dependency-light.

use alloc::vec::Vec;

use crate::basis::canonicalize_signs;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::tol;

/// Top eigenpairs of a symmetric matrix, eigenvalues descending,
/// eigenvectors sign-canonical orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    values: Vec<f64>,
    vectors: Matrix,
}

impl EigenPairs {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvectors as columns, aligned with `values`.
    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }
}

/// Top-`k` eigenpairs of symmetric `a` by cyclic Jacobi rotation sweeps,
/// run until the off-diagonal Frobenius mass drops below
/// [`tol::JACOBI_OFF_DIAG`] relative to `‖a‖_F`.
pub fn symmetric_eig(a: &Matrix, k: usize) -> Result<EigenPairs, Error> {
    let n = a.rows();
    if a.cols() != n || k == 0 || k > n {
        return Err(Error::DimensionMismatch);
    }
    let scale = a.max_abs();
    for i in 0..n {
        for j in (i + 1)..n {
            if libm::fabs(a.get(i, j) - a.get(j, i)) > tol::SYMMETRY * scale.max(1.0) {
                return Err(Error::NotSymmetric);
            }
        }
    }

    let fro = a.frobenius_norm();
    let mut m = a.clone();
    // symmetrize exactly so rotations preserve symmetry bit-for-bit
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, avg);
            m.set(j, i, avg);
        }
    }
    let mut v = Matrix::identity(n);

    let target = tol::JACOBI_OFF_DIAG * fro;
    let mut converged = fro == 0.0;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off_diag_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                // rotation annihilating (p,q), Numerical Recipes convention
                let theta = (aqq - app) / (2.0 * apq);
                let t = if libm::fabs(theta) > 1e150 {
                    1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                apply_rotation(&mut m, &mut v, p, q, c, s);
            }
        }
    }
    if !converged && off_diag_norm(&m) > target {
        return Err(Error::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(j, j)
            .partial_cmp(&m.get(i, i))
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().take(k).map(|&i| m.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n, k);
    for (col, &src) in order.iter().take(k).enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    canonicalize_signs(&mut vectors);
    Ok(EigenPairs { values, vectors })
}

fn off_diag_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = m.get(i, j);
                s += v * v;
            }
        }
    }
    libm::sqrt(s)
}

fn apply_rotation(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = m.rows();
    for i in 0..n {
        let mip = m.get(i, p);
        let miq = m.get(i, q);
        m.set(i, p, c * mip - s * miq);
        m.set(i, q, s * mip + c * miq);
    }
    for j in 0..n {
        let mpj = m.get(p, j);
        let mqj = m.get(q, j);
        m.set(p, j, c * mpj - s * mqj);
        m.set(q, j, s * mpj + c * mqj);
    }
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, c * vip - s * viq);
        v.set(i, q, s * vip + c * viq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vec_norm;
    use crate::rng::SplitMix64;
    use alloc::vec;
    use alloc::vec::Vec;

    fn random_symmetric(rng: &mut SplitMix64, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rng.uniform(-2.0, 2.0);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    fn residual(a: &Matrix, lambda: f64, v: &[f64]) -> f64 {
        let av = a.matvec(v);
        let diff: Vec<f64> = av.iter().zip(v).map(|(x, y)| x - lambda * y).collect();
        vec_norm(&diff)
    }

    #[test]
    fn diagonal_case() {
        let a = Matrix::new(2, 2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
        let e = symmetric_eig(&a, 2).unwrap();
        assert_eq!(e.values(), &[2.0, 1.0]);
        assert_eq!(e.vectors(), &Matrix::identity(2));
    }

    #[test]
    fn exchange_matrix() {
        let a = Matrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = symmetric_eig(&a, 2).unwrap();
        assert!((e.values()[0] - 1.0).abs() < 1e-12);
        assert!((e.values()[1] + 1.0).abs() < 1e-12);
        let inv_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
        assert!((e.vectors().get(0, 0) - inv_sqrt2).abs() < 1e-12);
        assert!((e.vectors().get(1, 0) - inv_sqrt2).abs() < 1e-12);
        assert!((e.vectors().get(0, 1) - inv_sqrt2).abs() < 1e-12);
        assert!((e.vectors().get(1, 1) + inv_sqrt2).abs() < 1e-12);
    }

    #[test]
    fn random_symmetric_residuals() {
        let mut rng = SplitMix64::new(17);
        let a = random_symmetric(&mut rng, 8);
        let e = symmetric_eig(&a, 3).unwrap();
        for (idx, &lambda) in e.values().iter().enumerate() {
            let v = e.vectors().column(idx);
            assert!(residual(&a, lambda, &v) < 1e-9);
        }
        // descending order
        assert!(e.values().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn full_reconstruction() {
        let mut rng = SplitMix64::new(5);
        let a = random_symmetric(&mut rng, 6);
        let e = symmetric_eig(&a, 6).unwrap();
        let mut recon = Matrix::zeros(6, 6);
        for (idx, &lambda) in e.values().iter().enumerate() {
            let v = e.vectors().column(idx);
            for i in 0..6 {
                for j in 0..6 {
                    recon.set(i, j, recon.get(i, j) + lambda * v[i] * v[j]);
                }
            }
        }
        assert!(recon.sub(&a).frobenius_norm() < 1e-8 * a.frobenius_norm());
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::new(2, 2, vec![1.0, 2.0, 0.0, 1.0]).unwrap();
        assert_eq!(symmetric_eig(&a, 1).unwrap_err(), Error::NotSymmetric);
    }
}
