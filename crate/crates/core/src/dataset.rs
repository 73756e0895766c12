//! Training-set containers, train/test splitting and synthetic data.
//!
//! File loading (PGM directories, text matrices) lives in the companion
//! CLI crate; everything here is pure and allocation-only.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// 1-D training set: a `d x n` matrix whose column `i` is sample `i`.
#[derive(Debug, Clone)]
pub struct VectorDataset {
    data: Matrix,
    labels: Vec<usize>,
    /// Mean of the original (uncentered) samples; `Some` iff centered.
    mean: Option<Vec<f64>>,
}

impl VectorDataset {
    pub fn new(data: Matrix, labels: Vec<usize>) -> Result<Self, Error> {
        if labels.len() != data.cols() {
            return Err(Error::LengthMismatch);
        }
        Ok(VectorDataset { data, labels, mean: None })
    }

    /// Unlabeled convenience constructor (labels all zero).
    pub fn unlabeled(data: Matrix) -> Self {
        let labels = vec![0; data.cols()];
        VectorDataset { data, labels, mean: None }
    }

    pub fn dim(&self) -> usize {
        self.data.rows()
    }

    pub fn n_samples(&self) -> usize {
        self.data.cols()
    }

    pub fn data(&self) -> &Matrix {
        &self.data
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sample(&self, i: usize) -> Vec<f64> {
        self.data.column(i)
    }

    pub fn is_centered(&self) -> bool {
        self.mean.is_some()
    }

    /// Mean of the original data, available once centered.
    pub fn mean(&self) -> Option<&[f64]> {
        self.mean.as_deref()
    }

    /// Subtracts the sample mean from every column and remembers it.
    /// Centering an already-centered set is the identity.
    pub fn center(&self) -> VectorDataset {
        if self.is_centered() {
            return self.clone();
        }
        let (d, n) = (self.dim(), self.n_samples());
        let mut mean = vec![0.0; d];
        for i in 0..d {
            let row = self.data.row(i);
            mean[i] = row.iter().sum::<f64>() / n as f64;
        }
        let mut data = self.data.clone();
        for i in 0..d {
            for j in 0..n {
                data.set(i, j, data.get(i, j) - mean[i]);
            }
        }
        VectorDataset { data, labels: self.labels.clone(), mean: Some(mean) }
    }

    /// Subtracts a caller-supplied mean (the train-time mean when
    /// preparing test samples) and stores it as the centering fingerprint.
    pub fn center_with(&self, mean: &[f64]) -> Result<VectorDataset, Error> {
        if mean.len() != self.dim() {
            return Err(Error::DimensionMismatch);
        }
        if self.is_centered() {
            return Err(Error::MeanMismatch);
        }
        let mut data = self.data.clone();
        for i in 0..self.dim() {
            for j in 0..self.n_samples() {
                data.set(i, j, data.get(i, j) - mean[i]);
            }
        }
        Ok(VectorDataset { data, labels: self.labels.clone(), mean: Some(mean.to_vec()) })
    }

    /// Restores the original uncentered samples.
    pub fn uncenter(&self) -> VectorDataset {
        match &self.mean {
            None => self.clone(),
            Some(mean) => {
                let mut data = self.data.clone();
                for i in 0..self.dim() {
                    for j in 0..self.n_samples() {
                        data.set(i, j, data.get(i, j) + mean[i]);
                    }
                }
                VectorDataset { data, labels: self.labels.clone(), mean: None }
            }
        }
    }

    /// Dataset restricted to the given sample indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> VectorDataset {
        let d = self.dim();
        let mut data = Matrix::zeros(d, indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for (col, &idx) in indices.iter().enumerate() {
            for i in 0..d {
                data.set(i, col, self.data.get(i, idx));
            }
            labels.push(self.labels[idx]);
        }
        VectorDataset { data, labels, mean: self.mean.clone() }
    }

    pub fn scale(&self, alpha: f64) -> VectorDataset {
        VectorDataset {
            data: self.data.scale(alpha),
            labels: self.labels.clone(),
            mean: self.mean.as_ref().map(|m| m.iter().map(|v| v * alpha).collect()),
        }
    }
}

/// 2-D training set: a stack of equally shaped `r x n'` image matrices.
#[derive(Debug, Clone)]
pub struct ImageDataset {
    images: Vec<Matrix>,
    labels: Vec<usize>,
    mean: Option<Matrix>,
}

impl ImageDataset {
    pub fn new(images: Vec<Matrix>, labels: Vec<usize>) -> Result<Self, Error> {
        if images.is_empty() {
            return Err(Error::EmptyInput);
        }
        if labels.len() != images.len() {
            return Err(Error::LengthMismatch);
        }
        let (r, c) = (images[0].rows(), images[0].cols());
        if images.iter().any(|m| m.rows() != r || m.cols() != c) {
            return Err(Error::DimensionMismatch);
        }
        Ok(ImageDataset { images, labels, mean: None })
    }

    pub fn unlabeled(images: Vec<Matrix>) -> Result<Self, Error> {
        let labels = vec![0; images.len()];
        ImageDataset::new(images, labels)
    }

    pub fn n_images(&self) -> usize {
        self.images.len()
    }

    /// Pixel rows per image.
    pub fn rows(&self) -> usize {
        self.images[0].rows()
    }

    /// Pixel columns per image.
    pub fn cols(&self) -> usize {
        self.images[0].cols()
    }

    pub fn image(&self, i: usize) -> &Matrix {
        &self.images[i]
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_centered(&self) -> bool {
        self.mean.is_some()
    }

    pub fn mean(&self) -> Option<&Matrix> {
        self.mean.as_ref()
    }

    pub fn center(&self) -> ImageDataset {
        if self.is_centered() {
            return self.clone();
        }
        let n = self.images.len() as f64;
        let mut mean = Matrix::zeros(self.rows(), self.cols());
        for img in &self.images {
            mean = mean.add(img);
        }
        let mean = mean.scale(1.0 / n);
        let images = self.images.iter().map(|img| img.sub(&mean)).collect();
        ImageDataset { images, labels: self.labels.clone(), mean: Some(mean) }
    }

    /// Image-dataset analog of [`VectorDataset::center_with`].
    pub fn center_with(&self, mean: &Matrix) -> Result<ImageDataset, Error> {
        if mean.rows() != self.rows() || mean.cols() != self.cols() {
            return Err(Error::DimensionMismatch);
        }
        if self.is_centered() {
            return Err(Error::MeanMismatch);
        }
        let images = self.images.iter().map(|img| img.sub(mean)).collect();
        Ok(ImageDataset { images, labels: self.labels.clone(), mean: Some(mean.clone()) })
    }

    pub fn uncenter(&self) -> ImageDataset {
        match &self.mean {
            None => self.clone(),
            Some(mean) => {
                let images = self.images.iter().map(|img| img.add(mean)).collect();
                ImageDataset { images, labels: self.labels.clone(), mean: None }
            }
        }
    }

    pub fn subset(&self, indices: &[usize]) -> ImageDataset {
        let images = indices.iter().map(|&i| self.images[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        ImageDataset { images, labels, mean: self.mean.clone() }
    }
}

/// Column-major stacking of each image into one long sample vector.
pub fn vectorize(ds: &ImageDataset) -> VectorDataset {
    let (r, c) = (ds.rows(), ds.cols());
    let d = r * c;
    let n = ds.n_images();
    let mut data = Matrix::zeros(d, n);
    for (s, img) in ds.images().iter().enumerate() {
        for j in 0..c {
            for i in 0..r {
                data.set(j * r + i, s, img.get(i, j));
            }
        }
    }
    VectorDataset {
        data,
        labels: ds.labels().to_vec(),
        mean: ds.mean.as_ref().map(|m| {
            let mut v = vec![0.0; d];
            for j in 0..c {
                for i in 0..r {
                    v[j * r + i] = m.get(i, j);
                }
            }
            v
        }),
    }
}

/// Inverse of [`vectorize`] for a single sample vector.
pub fn reshape_sample(v: &[f64], rows: usize, cols: usize) -> Result<Matrix, Error> {
    if v.len() != rows * cols {
        return Err(Error::DimensionMismatch);
    }
    let mut m = Matrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m.set(i, j, v[j * rows + i]);
        }
    }
    Ok(m)
}

/// Disjoint train/test partition over sample indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSplit {
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

fn group_by_label(labels: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, &label) in labels.iter().enumerate() {
        match groups.iter_mut().find(|(l, _)| *l == label) {
            Some((_, v)) => v.push(idx),
            None => groups.push((label, vec![idx])),
        }
    }
    groups
}

/// First `k_train` images of each subject (file order) go to train, the
/// rest to test.
pub fn split_first_k(labels: &[usize], k_train: usize) -> Result<LabeledSplit, Error> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (_, indices) in group_by_label(labels) {
        if indices.len() <= k_train {
            return Err(Error::InsufficientImagesForSubject);
        }
        train.extend_from_slice(&indices[..k_train]);
        test.extend_from_slice(&indices[k_train..]);
    }
    Ok(LabeledSplit { train_indices: train, test_indices: test })
}

/// Per-subject uniform sample of `k_train` images without replacement,
/// deterministic in `seed`.
pub fn split_random_k(labels: &[usize], k_train: usize, seed: u64) -> Result<LabeledSplit, Error> {
    let mut rng = SplitMix64::new(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (_, mut indices) in group_by_label(labels) {
        if indices.len() <= k_train {
            return Err(Error::InsufficientImagesForSubject);
        }
        rng.shuffle(&mut indices);
        let (tr, te) = indices.split_at(k_train);
        let mut tr = tr.to_vec();
        let mut te = te.to_vec();
        tr.sort_unstable();
        te.sort_unstable();
        train.extend(tr);
        test.extend(te);
    }
    Ok(LabeledSplit { train_indices: train, test_indices: test })
}

/// Samples scattered along a line plus isotropic far-away outliers, for
/// robustness experiments. Inliers get label 0, outliers label 1.
///
/// Inliers are `t * direction + noise` with `t` uniform on [-1, 1] and
/// Gaussian noise of the given sigma; outliers sit at radius
/// `outlier_scale` in uniformly random directions.
pub fn synth_line_with_outliers(
    n_inliers: usize,
    n_outliers: usize,
    direction: &[f64],
    noise_sigma: f64,
    outlier_scale: f64,
    seed: u64,
) -> VectorDataset {
    let d = direction.len();
    let mut rng = SplitMix64::new(seed);
    let n = n_inliers + n_outliers;
    let mut data = Matrix::zeros(d, n);
    let mut labels = vec![0usize; n];
    for s in 0..n_inliers {
        let t = rng.uniform(-1.0, 1.0);
        for i in 0..d {
            data.set(i, s, t * direction[i] + noise_sigma * rng.gaussian());
        }
    }
    for s in 0..n_outliers {
        let dir = rng.unit_vector(d);
        for i in 0..d {
            data.set(i, n_inliers + s, outlier_scale * dir[i]);
        }
        labels[n_inliers + s] = 1;
    }
    VectorDataset { data, labels, mean: None }
}

/// Synthetic multi-subject image stack: each subject is a random base
/// image, each of its images that base plus per-image Gaussian noise.
pub fn synth_image_classes(
    n_subjects: usize,
    images_per_subject: usize,
    rows: usize,
    cols: usize,
    noise_sigma: f64,
    seed: u64,
) -> ImageDataset {
    let mut rng = SplitMix64::new(seed);
    let mut images = Vec::with_capacity(n_subjects * images_per_subject);
    let mut labels = Vec::with_capacity(n_subjects * images_per_subject);
    for subject in 0..n_subjects {
        let base: Vec<f64> = (0..rows * cols).map(|_| rng.uniform(0.0, 255.0)).collect();
        for _ in 0..images_per_subject {
            let data: Vec<f64> = base.iter().map(|&b| b + noise_sigma * rng.gaussian()).collect();
            images.push(Matrix::new(rows, cols, data).expect("finite synthetic pixels"));
            labels.push(subject);
        }
    }
    ImageDataset { images, labels, mean: None }
}
