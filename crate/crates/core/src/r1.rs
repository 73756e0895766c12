//! R1-PCA and 2DR1-PCA: subspace iteration on a Cauchy-weighted
//! covariance, robust to outlying samples.
//!
//! Each iteration measures how far every sample sits from the current
//! subspace, down-weights far samples with the Cauchy weight
//! `(1 + s^2/c^2)^-1` (scale `c` = median residue), rebuilds the weighted
//! covariance and advances the basis one orthonormalized power step.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{orthonormalize, Basis};
use crate::dataset::{ImageDataset, VectorDataset};
use crate::error::Error;
use crate::matrix::{dot, median, Matrix};
use crate::pca::{fit_2dpca, fit_pca};
use crate::report::FitReport;
use crate::tol;

/// Per-sample robust weights plus the scale they were computed with.
#[derive(Debug, Clone)]
pub struct CauchyWeights {
    pub weights: Vec<f64>,
    pub scale: f64,
}

/// Which robust weight the covariance uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightFunction {
    /// `(1 + s^2/c^2)^-1`, the weight the benchmarks use.
    #[default]
    Cauchy,
    /// `1 / s`, the inverse-residual alternative; available but not
    /// benchmarked.
    InverseResidual,
}

/// Options for [`fit_r1_pca`] / [`fit_2dr1_pca`].
#[derive(Debug, Clone)]
pub struct R1Options {
    pub max_iters: usize,
    /// Stop once the sign-canonical Frobenius change drops below this.
    pub tol: f64,
    /// Compute weights once from the initial basis and keep them fixed
    /// (the literal pseudocode reading; the default recomputes).
    pub freeze_weights: bool,
    /// Test hook: all weights 1, which reduces the loop to plain
    /// subspace iteration on the covariance.
    pub force_uniform_weights: bool,
    pub weight_fn: WeightFunction,
}

impl Default for R1Options {
    fn default() -> Self {
        R1Options {
            max_iters: 120,
            tol: tol::R1_CHANGE,
            freeze_weights: false,
            force_uniform_weights: false,
            weight_fn: WeightFunction::Cauchy,
        }
    }
}

/// `s_i = sqrt(x_i^T x_i - x_i^T W W^T x_i)`, the distance of each sample
/// to the subspace. Tiny negative radicands from rounding clamp to zero.
pub fn residues_1d(x: &VectorDataset, w: &Basis) -> Result<Vec<f64>, Error> {
    if x.dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch);
    }
    let mut out = Vec::with_capacity(x.n_samples());
    for i in 0..x.n_samples() {
        let xi = x.sample(i);
        let total = dot(&xi, &xi);
        let coords = w.project_coords(&xi);
        let captured = dot(&coords, &coords);
        out.push(libm::sqrt((total - captured).max(0.0)));
    }
    Ok(out)
}

/// `s_i = ||F_i - W W^T F_i||_F` for each image.
pub fn residues_2d(f: &ImageDataset, w: &Basis) -> Result<Vec<f64>, Error> {
    if f.rows() != w.ambient_dim() {
        return Err(Error::DimensionMismatch);
    }
    let mut out = Vec::with_capacity(f.n_images());
    for img in f.images() {
        let total = img.frobenius_norm();
        let proj = w.matrix().transpose().matmul(img);
        let captured = proj.frobenius_norm();
        out.push(libm::sqrt((total * total - captured * captured).max(0.0)));
    }
    Ok(out)
}

/// Cauchy weights from residues: `c = median(s)`, `w_i = (1 + s_i^2/c^2)^-1`.
/// The scale is floored to guard the all-zero-residue case.
pub fn cauchy_weights(residues: &[f64]) -> CauchyWeights {
    let max_res = residues.iter().fold(0.0, |m: f64, &s| m.max(s));
    let c = median(residues)
        .expect("residues nonempty")
        .max(1e-12 * max_res)
        .max(1e-300);
    // (s/c)^2 rather than s^2/c^2: c^2 can underflow when all residues vanish
    let weights = residues
        .iter()
        .map(|&s| {
            let ratio = s / c;
            1.0 / (1.0 + ratio * ratio)
        })
        .collect();
    CauchyWeights { weights, scale: c }
}

/// Inverse-residual weights `w_i = 1/s_i`, floored at the same guard as
/// the Cauchy scale.
pub fn inverse_residual_weights(residues: &[f64]) -> CauchyWeights {
    let max_res = residues.iter().fold(0.0, |m: f64, &s| m.max(s));
    let floor = (1e-12 * max_res).max(1e-300);
    let weights = residues.iter().map(|&s| 1.0 / s.max(floor)).collect();
    CauchyWeights { weights, scale: floor }
}

/// `C_r = sum_i w_i x_i x_i^T`, materialized.
pub fn weighted_covariance_1d(x: &VectorDataset, w: &CauchyWeights) -> Result<Matrix, Error> {
    if w.weights.len() != x.n_samples() {
        return Err(Error::DimensionMismatch);
    }
    let d = x.dim();
    let mut cov = Matrix::zeros(d, d);
    for (s, &omega) in w.weights.iter().enumerate() {
        let xi = x.sample(s);
        for i in 0..d {
            let wi = omega * xi[i];
            if wi == 0.0 {
                continue;
            }
            for j in 0..d {
                cov.set(i, j, cov.get(i, j) + wi * xi[j]);
            }
        }
    }
    Ok(cov)
}

/// `C_r = sum_i w_i F_i F_i^T`.
pub fn weighted_covariance_2d(f: &ImageDataset, w: &CauchyWeights) -> Result<Matrix, Error> {
    if w.weights.len() != f.n_images() {
        return Err(Error::DimensionMismatch);
    }
    let r = f.rows();
    let mut cov = Matrix::zeros(r, r);
    for (img, &omega) in f.images().iter().zip(&w.weights) {
        let outer = img.matmul(&img.transpose());
        cov = cov.add(&outer.scale(omega));
    }
    Ok(cov)
}

fn weights_for(residues: &[f64], opts: &R1Options) -> Vec<f64> {
    if opts.force_uniform_weights {
        return vec![1.0; residues.len()];
    }
    match opts.weight_fn {
        WeightFunction::Cauchy => cauchy_weights(residues).weights,
        WeightFunction::InverseResidual => inverse_residual_weights(residues).weights,
    }
}

/// R1-PCA: PCA initialization, then weighted-covariance subspace
/// iteration until the sign-canonical change drops below `opts.tol`.
///
/// Accepts raw or centered data; centering happens internally and the
/// report traces the R1 reconstruction error of every iterate. The
/// weighted covariance is applied in factored form
/// `X (w .* (X^T W))`, identical to `C_r W` without materializing `C_r`.
pub fn fit_r1_pca(
    x: &VectorDataset,
    k: usize,
    opts: &R1Options,
) -> Result<(Basis, FitReport), Error> {
    let x = x.center();
    let (d, n) = (x.dim(), x.n_samples());
    if k == 0 || k > d.min(n) {
        return Err(Error::DimensionMismatch);
    }
    let xt = x.data().transpose(); // n x d, rows are samples (contiguous dots)
    let sq_norms: Vec<f64> = (0..n).map(|i| dot(xt.row(i), xt.row(i))).collect();

    let mut w = fit_pca(&x, k)?;
    let mut report = FitReport::default();
    let mut frozen: Option<Vec<f64>> = None;

    for _ in 0..opts.max_iters {
        let coords = xt.matmul(w.matrix()); // n x k, row i = W^T x_i
        let residues: Vec<f64> = (0..n)
            .map(|i| {
                let captured = dot(coords.row(i), coords.row(i));
                libm::sqrt((sq_norms[i] - captured).max(0.0))
            })
            .collect();
        let weights = match (&frozen, opts.freeze_weights) {
            (Some(fw), true) => fw.clone(),
            _ => {
                let fresh = weights_for(&residues, opts);
                if opts.freeze_weights {
                    frozen = Some(fresh.clone());
                }
                fresh
            }
        };
        report.objectives.push(residues.iter().sum());

        // W_half = C_r W = X diag(w) X^T W
        let mut weighted = coords.clone();
        for i in 0..n {
            for j in 0..k {
                weighted.set(i, j, weighted.get(i, j) * weights[i]);
            }
        }
        let half = x.data().matmul(&weighted);
        report.update_norms.push(half.frobenius_norm());
        let next = orthonormalize(&half)?;
        let change = next.matrix().sub(w.matrix()).frobenius_norm();
        report.change_norms.push(change);
        report.iterations += 1;
        w = next;
        if change < opts.tol {
            report.converged = true;
            break;
        }
    }
    Ok((w, report))
}

/// 2DR1-PCA: the same loop on image matrices, initialized from 2DPCA,
/// with residues and covariance taken image-wise.
pub fn fit_2dr1_pca(
    f: &ImageDataset,
    k: usize,
    opts: &R1Options,
) -> Result<(Basis, FitReport), Error> {
    let f = f.center();
    let r = f.rows();
    if k == 0 || k > r {
        return Err(Error::DimensionMismatch);
    }
    let n = f.n_images();
    // G_i = F_i F_i^T carries everything each iteration needs
    let outers: Vec<Matrix> = f.images().iter().map(|img| img.matmul(&img.transpose())).collect();
    let sq_norms: Vec<f64> = outers
        .iter()
        .map(|g| (0..r).map(|i| g.get(i, i)).sum())
        .collect();

    let mut w = fit_2dpca(&f, k)?;
    let mut report = FitReport::default();
    let mut frozen: Option<Vec<f64>> = None;

    for _ in 0..opts.max_iters {
        // ||W^T F_i||_F^2 = sum_j w_j^T G_i w_j
        let cols: Vec<Vec<f64>> = (0..k).map(|j| w.column(j)).collect();
        let residues: Vec<f64> = (0..n)
            .map(|i| {
                let captured: f64 = cols
                    .iter()
                    .map(|c| dot(&outers[i].matvec(c), c))
                    .sum();
                libm::sqrt((sq_norms[i] - captured).max(0.0))
            })
            .collect();
        let weights = match (&frozen, opts.freeze_weights) {
            (Some(fw), true) => fw.clone(),
            _ => {
                let fresh = weights_for(&residues, opts);
                if opts.freeze_weights {
                    frozen = Some(fresh.clone());
                }
                fresh
            }
        };
        report.objectives.push(residues.iter().sum());

        let mut cov = Matrix::zeros(r, r);
        for (g, &omega) in outers.iter().zip(&weights) {
            cov = cov.add(&g.scale(omega));
        }
        let half = cov.matmul(w.matrix());
        report.update_norms.push(half.frobenius_norm());
        let next = orthonormalize(&half)?;
        let change = next.matrix().sub(w.matrix()).frobenius_norm();
        report.change_norms.push(change);
        report.iterations += 1;
        w = next;
        if change < opts.tol {
            report.converged = true;
            break;
        }
    }
    Ok((w, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::subspace_angle;
    use crate::dataset::{synth_line_with_outliers, vectorize};
    use crate::rng::SplitMix64;

    fn random_vectors(rng: &mut SplitMix64, d: usize, n: usize) -> VectorDataset {
        let data = (0..d * n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        VectorDataset::unlabeled(Matrix::new(d, n, data).unwrap())
    }

    // coordinate variances decay geometrically, so the covariance has the
    // clear spectral gaps subspace iteration needs to settle quickly
    fn gapped_vectors(rng: &mut SplitMix64, d: usize, n: usize) -> VectorDataset {
        let mut data = Matrix::zeros(d, n);
        for i in 0..d {
            let scale = libm::pow(0.55, i as f64);
            for j in 0..n {
                data.set(i, j, scale * rng.uniform(-1.0, 1.0));
            }
        }
        VectorDataset::unlabeled(data)
    }

    fn basis_e1(dim: usize) -> Basis {
        let mut m = Matrix::zeros(dim, 1);
        m.set(0, 0, 1.0);
        Basis::from_orthonormal(m).unwrap()
    }

    #[test]
    fn residues_1d_pythagorean() {
        let w = basis_e1(2);
        let in_span = VectorDataset::unlabeled(Matrix::new(2, 1, vec![5.0, 0.0]).unwrap());
        assert!(residues_1d(&in_span, &w).unwrap()[0].abs() < 1e-12);
        let x = VectorDataset::unlabeled(Matrix::new(2, 1, vec![3.0, 4.0]).unwrap());
        assert!((residues_1d(&x, &w).unwrap()[0] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn residues_1d_matches_explicit_projection() {
        let mut rng = SplitMix64::new(6);
        let x = random_vectors(&mut rng, 5, 8);
        let w = orthonormalize(&Matrix::new(
            5,
            2,
            (0..10).map(|_| rng.uniform(-1.0, 1.0)).collect(),
        ).unwrap())
        .unwrap();
        let residues = residues_1d(&x, &w).unwrap();
        for i in 0..8 {
            let xi = x.sample(i);
            let proj = w.project(&xi);
            let diff: Vec<f64> = xi.iter().zip(&proj).map(|(a, b)| a - b).collect();
            assert!((residues[i] - crate::matrix::vec_norm(&diff)).abs() < 1e-10);
        }
    }

    #[test]
    fn residues_2d_row_removal() {
        let w = basis_e1(2);
        let img = Matrix::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let f = ImageDataset::unlabeled(vec![img]).unwrap();
        assert!((residues_2d(&f, &w).unwrap()[0] - 5.0).abs() < 1e-12);

        let contained = Matrix::new(2, 2, vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        let f = ImageDataset::unlabeled(vec![contained]).unwrap();
        assert!(residues_2d(&f, &w).unwrap()[0].abs() < 1e-12);
    }

    #[test]
    fn residues_2d_column_decomposition() {
        let mut rng = SplitMix64::new(13);
        let images: Vec<Matrix> = (0..5)
            .map(|_| Matrix::new(4, 3, (0..12).map(|_| rng.uniform(-1.0, 1.0)).collect()).unwrap())
            .collect();
        let f = ImageDataset::unlabeled(images).unwrap();
        let w = orthonormalize(&Matrix::new(
            4,
            2,
            (0..8).map(|_| rng.uniform(-1.0, 1.0)).collect(),
        ).unwrap())
        .unwrap();
        let residues = residues_2d(&f, &w).unwrap();
        for (i, img) in f.images().iter().enumerate() {
            let mut sq = 0.0;
            for c in 0..img.cols() {
                let col: Vec<f64> = (0..img.rows()).map(|r| img.get(r, c)).collect();
                let one_col = VectorDataset::unlabeled(
                    Matrix::new(img.rows(), 1, col).unwrap(),
                );
                let s = residues_1d(&one_col, &w).unwrap()[0];
                sq += s * s;
            }
            assert!((residues[i] - libm::sqrt(sq)).abs() < 1e-10);
        }
    }

    #[test]
    fn cauchy_weight_values() {
        let w = cauchy_weights(&[0.0]);
        assert_eq!(w.weights[0], 1.0);

        let w = cauchy_weights(&[1.0, 2.0, 3.0]);
        assert_eq!(w.scale, 2.0);
        assert!((w.weights[0] - 0.8).abs() < 1e-15);
        assert!((w.weights[1] - 0.5).abs() < 1e-15);
        assert!((w.weights[2] - 4.0 / 13.0).abs() < 1e-15);

        // a residue equal to the scale gets weight one half
        let w = cauchy_weights(&[2.0, 2.0, 2.0]);
        assert!(w.weights.iter().all(|&x| (x - 0.5).abs() < 1e-15));

        // all weights in (0, 1]; largest residue gets the smallest weight
        let w = cauchy_weights(&[0.5, 4.0, 1.5]);
        assert!(w.weights.iter().all(|&x| x > 0.0 && x <= 1.0));
        assert!(w.weights[1] < w.weights[0] && w.weights[1] < w.weights[2]);
    }

    #[test]
    fn weighted_covariance_brute_force() {
        let mut rng = SplitMix64::new(25);
        let x = random_vectors(&mut rng, 4, 6);
        let weights = CauchyWeights {
            weights: (0..6).map(|_| rng.uniform(0.1, 1.0)).collect(),
            scale: 1.0,
        };
        let cov = weighted_covariance_1d(&x, &weights).unwrap();
        let mut brute = Matrix::zeros(4, 4);
        for s in 0..6 {
            for i in 0..4 {
                for j in 0..4 {
                    brute.set(
                        i,
                        j,
                        brute.get(i, j)
                            + weights.weights[s] * x.data().get(i, s) * x.data().get(j, s),
                    );
                }
            }
        }
        assert!(cov.sub(&brute).max_abs() < 1e-12);

        let one = VectorDataset::unlabeled(Matrix::new(2, 1, vec![3.0, 4.0]).unwrap());
        let w1 = CauchyWeights { weights: vec![1.0], scale: 1.0 };
        let cov = weighted_covariance_1d(&one, &w1).unwrap();
        assert_eq!(cov.data(), &[9.0, 12.0, 12.0, 16.0]);

        let w0 = CauchyWeights { weights: vec![0.0], scale: 1.0 };
        assert_eq!(weighted_covariance_1d(&one, &w0).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn weighted_covariance_2d_matches_1d_on_column_images() {
        let mut rng = SplitMix64::new(26);
        let images: Vec<Matrix> = (0..5)
            .map(|_| Matrix::new(3, 1, (0..3).map(|_| rng.uniform(-1.0, 1.0)).collect()).unwrap())
            .collect();
        let f = ImageDataset::unlabeled(images).unwrap();
        let x = vectorize(&f);
        let w = CauchyWeights {
            weights: (0..5).map(|_| rng.uniform(0.1, 1.0)).collect(),
            scale: 1.0,
        };
        let a = weighted_covariance_2d(&f, &w).unwrap();
        let b = weighted_covariance_1d(&x, &w).unwrap();
        assert!(a.sub(&b).max_abs() < 1e-12);
    }

    #[test]
    fn uniform_weights_reduce_to_pca() {
        let mut rng = SplitMix64::new(40);
        let x = random_vectors(&mut rng, 6, 30);
        let opts = R1Options { force_uniform_weights: true, ..R1Options::default() };
        let (w, report) = fit_r1_pca(&x, 2, &opts).unwrap();
        assert!(report.converged);
        let pca = fit_pca(&x.center(), 2).unwrap();
        assert!(subspace_angle(&w, &pca).unwrap() < 1e-6);
    }

    #[test]
    fn uniform_weights_reduce_to_2dpca() {
        let mut rng = SplitMix64::new(41);
        let images: Vec<Matrix> = (0..12)
            .map(|_| Matrix::new(5, 4, (0..20).map(|_| rng.uniform(-1.0, 1.0)).collect()).unwrap())
            .collect();
        let f = ImageDataset::unlabeled(images).unwrap();
        let opts = R1Options { force_uniform_weights: true, ..R1Options::default() };
        let (w, _) = fit_2dr1_pca(&f, 2, &opts).unwrap();
        let base = fit_2dpca(&f.center(), 2).unwrap();
        assert!(subspace_angle(&w, &base).unwrap() < 1e-6);
    }

    #[test]
    fn robust_on_line_with_outliers() {
        let mut rng = SplitMix64::new(1);
        let dir = rng.unit_vector(8);
        let ds = synth_line_with_outliers(200, 10, &dir, 0.02, 1.0 * 50.0 * 0.02, 3);
        let dir_basis = Basis::from_orthonormal(
            Matrix::from_columns(&[dir.clone()]).unwrap(),
        )
        .unwrap();
        let pca = fit_pca(&ds.center(), 1).unwrap();
        let (r1, _) = fit_r1_pca(&ds, 1, &R1Options::default()).unwrap();
        let pca_angle = subspace_angle(&pca, &dir_basis).unwrap();
        let r1_angle = subspace_angle(&r1, &dir_basis).unwrap();
        assert!(
            r1_angle < pca_angle,
            "expected robust fit closer to the line: r1 {r1_angle} vs pca {pca_angle}"
        );
    }

    #[test]
    fn column_images_trace_matches_1d() {
        let mut rng = SplitMix64::new(42);
        let images: Vec<Matrix> = (0..20)
            .map(|_| {
                let col: Vec<f64> = (0..6)
                    .map(|i| libm::pow(0.55, i as f64) * rng.uniform(-1.0, 1.0))
                    .collect();
                Matrix::new(6, 1, col).unwrap()
            })
            .collect();
        let f = ImageDataset::unlabeled(images).unwrap();
        let x = vectorize(&f);
        let opts = R1Options::default();
        let (w2, rep2) = fit_2dr1_pca(&f, 2, &opts).unwrap();
        let (w1, rep1) = fit_r1_pca(&x, 2, &opts).unwrap();
        assert_eq!(rep1.iterations, rep2.iterations);
        for (a, b) in rep1.change_norms.iter().zip(&rep2.change_norms) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(subspace_angle(&w1, &w2).unwrap() < 1e-8);
    }

    #[test]
    fn every_iterate_orthonormal_and_weights_behave() {
        let mut rng = SplitMix64::new(55);
        let x = gapped_vectors(&mut rng, 10, 40);
        let (w, report) = fit_r1_pca(&x, 3, &R1Options::default()).unwrap();
        let gram = w.matrix().transpose().matmul(w.matrix());
        assert!(gram.sub(&Matrix::identity(3)).max_abs() < tol::BASIS_ORTHONORMALITY);
        assert!(report.objectives.iter().all(|v| v.is_finite()));
        assert!(report.converged, "random data should settle within 120 iterations");
    }

    #[test]
    fn frozen_weights_still_converge() {
        let mut rng = SplitMix64::new(60);
        let x = random_vectors(&mut rng, 6, 25);
        let opts = R1Options { freeze_weights: true, ..R1Options::default() };
        let (w, report) = fit_r1_pca(&x, 2, &opts).unwrap();
        assert!(report.converged);
        assert_eq!(w.k(), 2);
    }

    #[test]
    fn rotational_equivariance() {
        let mut rng = SplitMix64::new(70);
        let x = gapped_vectors(&mut rng, 5, 30);
        // random rotation from orthonormalizing a random square matrix
        let rot = orthonormalize(&Matrix::new(
            5,
            5,
            (0..25).map(|_| rng.uniform(-1.0, 1.0)).collect(),
        ).unwrap())
        .unwrap();
        let rotated = VectorDataset::unlabeled(rot.matrix().matmul(x.data()));
        let opts = R1Options { max_iters: 50, tol: 0.0, ..R1Options::default() };
        let (w_plain, _) = fit_r1_pca(&x, 2, &opts).unwrap();
        let (w_rot, _) = fit_r1_pca(&rotated, 2, &opts).unwrap();
        let lifted = orthonormalize(&rot.matrix().matmul(w_plain.matrix())).unwrap();
        assert!(subspace_angle(&w_rot, &lifted).unwrap() < 1e-8);
    }
}
