//! Standard PCA and 2DPCA, used as baselines and as initializers for the
//! Cauchy-weighted fitters.

use alloc::vec::Vec;

use crate::basis::{orthonormalize, Basis};
use crate::dataset::{ImageDataset, VectorDataset};
use crate::eigen::symmetric_eig;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::tol;

/// Top-`k` eigenvectors of the sample covariance `(1/n) sum x_i x_i^T`.
///
/// Centers internally when the input is not already centered. For tall
/// data (`d > n`) the eigenproblem is solved on the `n x n` Gram matrix
/// and lifted back, so image-scale dimensions stay tractable.
pub fn fit_pca(x: &VectorDataset, k: usize) -> Result<Basis, Error> {
    let x = x.center();
    let (d, n) = (x.dim(), x.n_samples());
    if k == 0 || k > d.min(n) {
        return Err(Error::DimensionMismatch);
    }
    if d <= n {
        let cov = covariance_1d(&x);
        top_k_basis(&cov, k)
    } else {
        // Gram trick: eigenpairs of (1/n) X^T X share the nonzero spectrum
        // of the covariance; w = X u / ||X u||.
        let xt = x.data().transpose(); // n x d, rows are samples
        let mut gram = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = crate::matrix::dot(xt.row(i), xt.row(j)) / n as f64;
                gram.set(i, j, v);
                gram.set(j, i, v);
            }
        }
        let pairs = symmetric_eig(&gram, n)?;
        let trace: f64 = (0..n).map(|i| gram.get(i, i)).sum();
        let floor = tol::RANK_FLOOR * trace;
        let usable = pairs.values().iter().filter(|&&v| v > floor).count();
        if usable < k {
            return Err(Error::RankTooLow);
        }
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
        for j in 0..k {
            let u = pairs.vectors().column(j);
            let w = x.data().matvec(&u);
            cols.push(w);
        }
        let stacked = Matrix::from_columns(&cols)?;
        orthonormalize(&stacked)
    }
}

/// Top-`k` eigenvectors of the image covariance `(1/n) sum F_i F_i^T`.
/// Projection convention is left-sided: features are `W^T F_i`.
pub fn fit_2dpca(f: &ImageDataset, k: usize) -> Result<Basis, Error> {
    let f = f.center();
    if k == 0 || k > f.rows() {
        return Err(Error::DimensionMismatch);
    }
    let cov = covariance_2d(&f);
    top_k_basis(&cov, k)
}

fn top_k_basis(cov: &Matrix, k: usize) -> Result<Basis, Error> {
    let n = cov.rows();
    let pairs = symmetric_eig(cov, n)?;
    let trace: f64 = (0..n).map(|i| cov.get(i, i)).sum();
    let floor = tol::RANK_FLOOR * trace;
    let usable = pairs.values().iter().filter(|&&v| v > floor).count();
    if usable < k {
        return Err(Error::RankTooLow);
    }
    let cols: Vec<Vec<f64>> = (0..k).map(|j| pairs.vectors().column(j)).collect();
    Basis::from_orthonormal(Matrix::from_columns(&cols)?)
}

/// `(1/n) X X^T`, materialized; only sensible for moderate `d`.
pub fn covariance_1d(x: &VectorDataset) -> Matrix {
    let (d, n) = (x.dim(), x.n_samples());
    let mut cov = Matrix::zeros(d, d);
    for s in 0..n {
        let col = x.sample(s);
        for i in 0..d {
            for j in 0..d {
                cov.set(i, j, cov.get(i, j) + col[i] * col[j]);
            }
        }
    }
    cov.scale(1.0 / n as f64)
}

/// `(1/n) sum F_i F_i^T`.
pub fn covariance_2d(f: &ImageDataset) -> Matrix {
    let r = f.rows();
    let mut cov = Matrix::zeros(r, r);
    for img in f.images() {
        let outer = img.matmul(&img.transpose());
        cov = cov.add(&outer);
    }
    cov.scale(1.0 / f.n_images() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::subspace_angle;
    use crate::dataset::vectorize;
    use crate::matrix::vec_norm;
    use crate::rng::SplitMix64;
    use alloc::vec;

    fn random_vectors(rng: &mut SplitMix64, d: usize, n: usize) -> VectorDataset {
        let data = (0..d * n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        VectorDataset::unlabeled(Matrix::new(d, n, data).unwrap())
    }

    #[test]
    fn axis_aligned_variance() {
        let data = Matrix::new(2, 2, vec![1.0, -1.0, 0.0, 0.0]).unwrap();
        let ds = VectorDataset::unlabeled(data);
        let basis = fit_pca(&ds, 1).unwrap();
        assert!((basis.matrix().get(0, 0) - 1.0).abs() < 1e-12);
        assert!(basis.matrix().get(1, 0).abs() < 1e-12);
    }

    #[test]
    fn complete_basis_reconstructs_identity() {
        let mut rng = SplitMix64::new(2);
        let ds = random_vectors(&mut rng, 4, 30);
        let basis = fit_pca(&ds, 4).unwrap();
        let wwt = basis.matrix().matmul(&basis.matrix().transpose());
        assert!(wwt.sub(&Matrix::identity(4)).max_abs() < 1e-8);
    }

    #[test]
    fn isotropic_gaussian_eigenvalues_close() {
        let mut rng = SplitMix64::new(8);
        let n = 4000;
        let data: Vec<f64> = (0..2 * n).map(|_| rng.gaussian()).collect();
        let ds = VectorDataset::unlabeled(Matrix::new(2, n, data).unwrap()).center();
        let cov = covariance_1d(&ds);
        // recompute the covariance directly, entry by entry
        let mut direct = Matrix::zeros(2, 2);
        for s in 0..n {
            let x = ds.sample(s);
            for i in 0..2 {
                for j in 0..2 {
                    direct.set(i, j, direct.get(i, j) + x[i] * x[j] / n as f64);
                }
            }
        }
        assert!(cov.sub(&direct).max_abs() < 1e-10);
        let pairs = symmetric_eig(&cov, 2).unwrap();
        let gap = (pairs.values()[0] - pairs.values()[1]).abs();
        assert!(gap < 0.15, "isotropic sample should have near-equal eigenvalues, gap {gap}");
        let basis = fit_pca(&ds, 2).unwrap();
        assert_eq!(basis.k(), 2);
    }

    #[test]
    fn gram_trick_matches_direct_covariance_path() {
        let mut rng = SplitMix64::new(44);
        // d > n forces the Gram path; compare against a widened copy
        let ds = random_vectors(&mut rng, 12, 6).center();
        let basis = fit_pca(&ds, 3).unwrap();
        let cov = covariance_1d(&ds);
        let direct = top_k_basis(&cov, 3).unwrap();
        assert!(subspace_angle(&basis, &direct).unwrap() < 1e-8);
    }

    #[test]
    fn sample_order_invariance() {
        let mut rng = SplitMix64::new(15);
        let ds = random_vectors(&mut rng, 5, 40).center();
        let rev: Vec<usize> = (0..40).rev().collect();
        let shuffled = ds.subset(&rev);
        let a = fit_pca(&ds, 2).unwrap();
        let b = fit_pca(&shuffled, 2).unwrap();
        assert!(subspace_angle(&a, &b).unwrap() < 1e-8);
    }

    #[test]
    fn rank_too_low_detected() {
        // 3-D data confined to a line cannot give 2 components
        let data = Matrix::new(3, 4, vec![
            1.0, 2.0, -1.0, -2.0,
            2.0, 4.0, -2.0, -4.0,
            0.0, 0.0, 0.0, 0.0,
        ]).unwrap();
        let ds = VectorDataset::unlabeled(data);
        assert_eq!(fit_pca(&ds, 2).unwrap_err(), Error::RankTooLow);
    }

    #[test]
    fn twodpca_rank_one_pair() {
        // F and -F with F = e1 * rowvec
        let f = Matrix::new(2, 3, vec![1.0, 2.0, 3.0, 0.0, 0.0, 0.0]).unwrap();
        let nf = f.scale(-1.0);
        let ds = ImageDataset::unlabeled(vec![f, nf]).unwrap();
        let basis = fit_2dpca(&ds, 1).unwrap();
        assert!((basis.matrix().get(0, 0) - 1.0).abs() < 1e-12);
        assert!(basis.matrix().get(1, 0).abs() < 1e-12);
    }

    #[test]
    fn twodpca_complete_and_residuals() {
        let mut rng = SplitMix64::new(30);
        let images: Vec<Matrix> = (0..12)
            .map(|_| Matrix::new(5, 4, (0..20).map(|_| rng.uniform(-1.0, 1.0)).collect()).unwrap())
            .collect();
        let ds = ImageDataset::unlabeled(images).unwrap().center();
        let full = fit_2dpca(&ds, 5).unwrap();
        assert_eq!(full.k(), 5);

        // brute-force covariance assembly for the residual oracle
        let mut cov = Matrix::zeros(5, 5);
        for img in ds.images() {
            for i in 0..5 {
                for j in 0..5 {
                    let mut s = 0.0;
                    for c in 0..4 {
                        s += img.get(i, c) * img.get(j, c);
                    }
                    cov.set(i, j, cov.get(i, j) + s / 12.0);
                }
            }
        }
        let basis = fit_2dpca(&ds, 2).unwrap();
        let pairs = symmetric_eig(&cov, 2).unwrap();
        for j in 0..2 {
            let w = basis.column(j);
            let cw = cov.matvec(&w);
            let lambda = pairs.values()[j];
            let resid: Vec<f64> = cw.iter().zip(&w).map(|(a, b)| a - lambda * b).collect();
            assert!(vec_norm(&resid) < 1e-9);
        }
    }

    #[test]
    fn eigenvector_beats_random_directions_at_k1() {
        let mut rng = SplitMix64::new(77);
        let images: Vec<Matrix> = (0..10)
            .map(|_| Matrix::new(4, 3, (0..12).map(|_| rng.uniform(-1.0, 1.0)).collect()).unwrap())
            .collect();
        let ds = ImageDataset::unlabeled(images).unwrap().center();
        let basis = fit_2dpca(&ds, 1).unwrap();
        let w = basis.column(0);
        let score = |v: &[f64]| -> f64 {
            ds.images()
                .iter()
                .map(|img| {
                    let proj: Vec<f64> = (0..img.cols())
                        .map(|c| (0..img.rows()).map(|r| v[r] * img.get(r, c)).sum())
                        .collect();
                    proj.iter().map(|p| p * p).sum::<f64>()
                })
                .sum()
        };
        let best = score(&w);
        for _ in 0..200 {
            let v = rng.unit_vector(4);
            assert!(score(&v) <= best + 1e-9);
        }
    }

    #[test]
    fn column_images_reduce_to_pca() {
        let mut rng = SplitMix64::new(50);
        let images: Vec<Matrix> = (0..15)
            .map(|_| Matrix::new(6, 1, (0..6).map(|_| rng.uniform(-1.0, 1.0)).collect()).unwrap())
            .collect();
        let ds = ImageDataset::unlabeled(images).unwrap().center();
        let two_d = fit_2dpca(&ds, 2).unwrap();
        let one_d = fit_pca(&vectorize(&ds), 2).unwrap();
        assert!(subspace_angle(&two_d, &one_d).unwrap() < 1e-8);
    }
}
