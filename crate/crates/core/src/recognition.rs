//! Projection through a fitted basis and nearest-neighbor scoring.

use alloc::vec::Vec;

use crate::basis::Basis;
use crate::dataset::{ImageDataset, VectorDataset};
use crate::error::Error;
use crate::matrix::{vec_norm, Matrix};

/// Features for every sample: length-k vectors (1-D methods) or
/// `k x n'` matrices (2-D methods), labels aligned.
#[derive(Debug, Clone)]
pub struct FeatureSet {
    features: Features,
    labels: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Features {
    /// `k x n` matrix, column per sample.
    Vectors(Matrix),
    Matrices(Vec<Matrix>),
}

impl FeatureSet {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn vector(&self, i: usize) -> Option<Vec<f64>> {
        match &self.features {
            Features::Vectors(m) => Some(m.column(i)),
            Features::Matrices(_) => None,
        }
    }

    pub fn matrix(&self, i: usize) -> Option<&Matrix> {
        match &self.features {
            Features::Matrices(v) => Some(&v[i]),
            Features::Vectors(_) => None,
        }
    }

    /// Frobenius norm of the whole feature block, for contraction checks.
    pub fn total_norm(&self) -> f64 {
        match &self.features {
            Features::Vectors(m) => m.frobenius_norm(),
            Features::Matrices(v) => {
                libm::sqrt(v.iter().map(|m| {
                    let f = m.frobenius_norm();
                    f * f
                }).sum())
            }
        }
    }
}

/// Distance between 2-D feature matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatrixDistance {
    /// Full Frobenius distance (root-sum of squared column distances).
    #[default]
    Frobenius,
    /// Sum of per-column Euclidean distances, the convention of much of
    /// the 2DPCA literature.
    SumColumnEuclidean,
}

fn check_mean(stored: &[f64], supplied: Option<&[f64]>) -> Result<(), Error> {
    if let Some(supplied) = supplied {
        if stored.len() != supplied.len() {
            return Err(Error::MeanMismatch);
        }
        let scale = vec_norm(stored).max(1.0);
        let diff: f64 = stored
            .iter()
            .zip(supplied)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        if libm::sqrt(diff) > 1e-9 * scale {
            return Err(Error::MeanMismatch);
        }
    }
    Ok(())
}

/// `W^T X` column features for a centered vector dataset. When
/// `fit_mean` is given, the dataset must have been centered with that
/// same mean; a different fingerprint is rejected as `MeanMismatch`.
pub fn project_vectors(
    w: &Basis,
    ds: &VectorDataset,
    fit_mean: Option<&[f64]>,
) -> Result<FeatureSet, Error> {
    if ds.dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch);
    }
    match ds.mean() {
        Some(mean) => check_mean(mean, fit_mean)?,
        None => {
            if fit_mean.is_some() {
                return Err(Error::MeanMismatch);
            }
        }
    }
    let features = w.matrix().transpose().matmul(ds.data());
    Ok(FeatureSet { features: Features::Vectors(features), labels: ds.labels().to_vec() })
}

/// Per-image `W^T F_i` feature matrices for a centered image dataset.
pub fn project_images(
    w: &Basis,
    ds: &ImageDataset,
    fit_mean: Option<&Matrix>,
) -> Result<FeatureSet, Error> {
    if ds.rows() != w.ambient_dim() {
        return Err(Error::DimensionMismatch);
    }
    match (ds.mean(), fit_mean) {
        (Some(mean), Some(expect)) => {
            if mean.rows() != expect.rows() || mean.cols() != expect.cols() {
                return Err(Error::MeanMismatch);
            }
            let scale = expect.frobenius_norm().max(1.0);
            if mean.sub(expect).frobenius_norm() > 1e-9 * scale {
                return Err(Error::MeanMismatch);
            }
        }
        (None, Some(_)) => return Err(Error::MeanMismatch),
        _ => {}
    }
    let wt = w.matrix().transpose();
    let features = ds.images().iter().map(|img| wt.matmul(img)).collect();
    Ok(FeatureSet { features: Features::Matrices(features), labels: ds.labels().to_vec() })
}

fn matrix_distance(a: &Matrix, b: &Matrix, kind: MatrixDistance) -> f64 {
    match kind {
        MatrixDistance::Frobenius => a.sub(b).frobenius_norm(),
        MatrixDistance::SumColumnEuclidean => {
            let diff = a.sub(b);
            (0..diff.cols())
                .map(|c| {
                    libm::sqrt((0..diff.rows()).map(|r| {
                        let v = diff.get(r, c);
                        v * v
                    }).sum())
                })
                .sum()
        }
    }
}

/// 1-NN: each test sample takes the label of its closest training
/// sample; ties resolve to the lowest training index.
pub fn nn_classify(
    train: &FeatureSet,
    test: &FeatureSet,
    dist: MatrixDistance,
) -> Result<Vec<usize>, Error> {
    if train.is_empty() {
        return Err(Error::EmptyTrainSet);
    }
    match (&train.features, &test.features) {
        (Features::Vectors(tr), Features::Vectors(te)) => {
            if tr.rows() != te.rows() {
                return Err(Error::DimensionMismatch);
            }
            let trt = tr.transpose();
            let tet = te.transpose();
            let mut out = Vec::with_capacity(te.cols());
            for i in 0..tet.rows() {
                let q = tet.row(i);
                let mut best = 0;
                let mut best_d = f64::INFINITY;
                for j in 0..trt.rows() {
                    let d: f64 = trt
                        .row(j)
                        .iter()
                        .zip(q)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    if d < best_d {
                        best_d = d;
                        best = j;
                    }
                }
                out.push(train.labels[best]);
            }
            Ok(out)
        }
        (Features::Matrices(tr), Features::Matrices(te)) => {
            let (r, c) = (tr[0].rows(), tr[0].cols());
            if te.iter().any(|m| m.rows() != r || m.cols() != c) {
                return Err(Error::DimensionMismatch);
            }
            let mut out = Vec::with_capacity(te.len());
            for q in te {
                let mut best = 0;
                let mut best_d = f64::INFINITY;
                for (j, cand) in tr.iter().enumerate() {
                    let d = matrix_distance(cand, q, dist);
                    if d < best_d {
                        best_d = d;
                        best = j;
                    }
                }
                out.push(train.labels[best]);
            }
            Ok(out)
        }
        _ => Err(Error::DimensionMismatch),
    }
}

/// Fraction of exact label matches.
pub fn accuracy(predicted: &[usize], actual: &[usize]) -> Result<f64, Error> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch);
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput);
    }
    let hits = predicted.iter().zip(actual).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / predicted.len() as f64)
}
