//! Orthonormal bases of linear subspaces, with a canonical sign convention.

use alloc::vec::Vec;

use crate::error::Error;
use crate::matrix::{dot, vec_norm, Matrix};
use crate::tol;

/// Projection matrix `W` with orthonormal columns.
///
/// Every constructor leaves each column sign-canonical: the entry of
/// largest magnitude (ties broken by lowest index) is positive. This
/// removes the sign ambiguity of eigenvectors and fixed points, so
/// convergence checks and cross-run comparisons are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    mat: Matrix,
}

impl Basis {
    /// Wraps a matrix whose columns are already orthonormal within
    /// [`tol::BASIS_ORTHONORMALITY`]. Canonicalizes signs.
    pub fn from_orthonormal(mat: Matrix) -> Result<Self, Error> {
        if mat.cols() > mat.rows() {
            return Err(Error::DimensionMismatch);
        }
        let mut mat = mat;
        canonicalize_signs(&mut mat);
        let gram_defect = gram_defect(&mat);
        if gram_defect >= tol::BASIS_ORTHONORMALITY {
            return Err(Error::InvalidMatrix("columns are not orthonormal"));
        }
        Ok(Basis { mat })
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn k(&self) -> usize {
        self.mat.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.mat.column(j)
    }

    /// `W^T v`, the coordinates of `v` in the subspace.
    pub fn project_coords(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.ambient_dim());
        (0..self.k()).map(|j| {
            (0..self.ambient_dim()).map(|i| self.mat.get(i, j) * v[i]).sum()
        }).collect()
    }

    /// `W W^T v`, the orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        let coords = self.project_coords(v);
        let mut out = alloc::vec![0.0; self.ambient_dim()];
        for (j, &c) in coords.iter().enumerate() {
            for i in 0..self.ambient_dim() {
                out[i] += self.mat.get(i, j) * c;
            }
        }
        out
    }
}

/// Flips column signs so the largest-magnitude entry of each column is
/// positive, ties broken by lowest row index.
pub fn canonicalize_signs(mat: &mut Matrix) {
    for j in 0..mat.cols() {
        let mut best_row = 0;
        let mut best_abs = -1.0;
        for i in 0..mat.rows() {
            let a = libm::fabs(mat.get(i, j));
            if a > best_abs {
                best_abs = a;
                best_row = i;
            }
        }
        if mat.get(best_row, j) < 0.0 {
            for i in 0..mat.rows() {
                mat.set(i, j, -mat.get(i, j));
            }
        }
    }
}

fn gram_defect(mat: &Matrix) -> f64 {
    let gram = mat.transpose().matmul(mat);
    gram.sub(&Matrix::identity(mat.cols())).max_abs()
}

/// QR-style orthonormalization of the columns of `w`, left to right
/// (modified Gram-Schmidt with one reorthogonalization pass), so the first
/// output direction equals the first input direction up to sign.
pub fn orthonormalize(w: &Matrix) -> Result<Basis, Error> {
    let k = w.cols();
    if k > w.rows() {
        return Err(Error::DimensionMismatch);
    }
    // already-orthonormal input passes through untouched (modulo signs),
    // which makes the operation exactly idempotent
    if gram_defect(w) < 1e-13 {
        let mut mat = w.clone();
        canonicalize_signs(&mut mat);
        return Ok(Basis { mat });
    }
    let scale = w.frobenius_norm();
    let mut cols: Vec<Vec<f64>> = (0..k).map(|j| w.column(j)).collect();
    for j in 0..k {
        // two MGS passes keep the Gram defect well under the Basis bound
        for _ in 0..2 {
            for p in 0..j {
                let (head, tail) = cols.split_at_mut(j);
                let proj = dot(&head[p], &tail[0]);
                for (t, h) in tail[0].iter_mut().zip(&head[p]) {
                    *t -= proj * h;
                }
            }
        }
        let norm = vec_norm(&cols[j]);
        if norm < tol::RANK_DEFICIENT * scale || norm == 0.0 {
            return Err(Error::RankDeficient);
        }
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut mat = Matrix::from_columns(&cols)?;
    canonicalize_signs(&mut mat);
    Ok(Basis { mat })
}

/// Largest principal angle between the spans, in [0, pi/2].
pub fn subspace_angle(a: &Basis, b: &Basis) -> Result<f64, Error> {
    if a.ambient_dim() != b.ambient_dim() || a.k() != b.k() {
        return Err(Error::DimensionMismatch);
    }
    // sine formulation: the largest singular value of (I - A A^T) B is
    // sin(theta_max), which stays accurate for tiny angles where the
    // cosine route bottoms out around sqrt(machine epsilon)
    let coords = a.matrix().transpose().matmul(b.matrix());
    let residual = b.matrix().sub(&a.matrix().matmul(&coords));
    let gram = residual.transpose().matmul(&residual);
    let pairs = crate::eigen::symmetric_eig(&gram, 1)?;
    let sin_sq = pairs.values()[0].max(0.0).min(1.0);
    Ok(libm::asin(libm::sqrt(sin_sq)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use alloc::vec;

    fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| rng.uniform(-1.0, 1.0)).collect();
        Matrix::new(rows, cols, data).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let q = orthonormalize(&Matrix::identity(3)).unwrap();
        assert_eq!(q.matrix(), &Matrix::identity(3));
    }

    #[test]
    fn scaling_removed() {
        let d = Matrix::new(2, 2, vec![2.0, 0.0, 0.0, 3.0]).unwrap();
        let q = orthonormalize(&d).unwrap();
        assert_eq!(q.matrix(), &Matrix::identity(2));
    }

    #[test]
    fn random_full_rank_projection_residual() {
        let mut rng = SplitMix64::new(3);
        let w = random_matrix(&mut rng, 6, 3);
        let q = orthonormalize(&w).unwrap();
        let gram = q.matrix().transpose().matmul(q.matrix());
        assert!(gram.sub(&Matrix::identity(3)).max_abs() < 1e-10);
        // (I - QQ^T) W should vanish since spans agree
        let qqt_w = q.matrix().matmul(&q.matrix().transpose().matmul(&w));
        assert!(w.sub(&qqt_w).frobenius_norm() < 1e-9);
    }

    #[test]
    fn rank_deficient_detected() {
        let w = Matrix::new(3, 2, vec![1.0, 2.0, 1.0, 2.0, 1.0, 2.0]).unwrap();
        assert_eq!(orthonormalize(&w).unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn idempotent_in_canonical_form() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..10 {
            let w = random_matrix(&mut rng, 7, 3);
            let q1 = orthonormalize(&w).unwrap();
            let q2 = orthonormalize(q1.matrix()).unwrap();
            assert_eq!(q1.matrix(), q2.matrix());
        }
    }

    #[test]
    fn angle_basic_cases() {
        let e1 = Basis::from_orthonormal(Matrix::new(2, 1, vec![1.0, 0.0]).unwrap()).unwrap();
        let e2 = Basis::from_orthonormal(Matrix::new(2, 1, vec![0.0, 1.0]).unwrap()).unwrap();
        assert!(subspace_angle(&e1, &e1).unwrap() < 1e-10);
        assert!((subspace_angle(&e1, &e2).unwrap() - core::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let theta = 0.3;
        let rot = Basis::from_orthonormal(
            Matrix::new(2, 1, vec![libm::cos(theta), libm::sin(theta)]).unwrap(),
        )
        .unwrap();
        assert!((subspace_angle(&e1, &rot).unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn angle_is_symmetric() {
        let mut rng = SplitMix64::new(21);
        let a = orthonormalize(&random_matrix(&mut rng, 8, 3)).unwrap();
        let b = orthonormalize(&random_matrix(&mut rng, 8, 3)).unwrap();
        let ab = subspace_angle(&a, &b).unwrap();
        let ba = subspace_angle(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-10);
        assert!(ab > 1e-10); // random spans differ
    }

    #[test]
    fn angle_dimension_mismatch() {
        let a = Basis::from_orthonormal(Matrix::new(2, 1, vec![1.0, 0.0]).unwrap()).unwrap();
        let b = Basis::from_orthonormal(Matrix::new(3, 1, vec![1.0, 0.0, 0.0]).unwrap()).unwrap();
        assert_eq!(subspace_angle(&a, &b).unwrap_err(), Error::DimensionMismatch);
    }
}
