//! L1-PCA and 2DL1-PCA: greedy maximization of the L1 projection norm.
//!
//! A single component is a fixed point of the polarity-flipping update
//! `w <- normalize(sum_i p_i x_i)` with `p_i = sign(w^T x_i)`; the 2-D
//! variant picks, per image, the column where `w^T F_i` has the largest
//! magnitude and flips that column's sign. Multi-component bases come
//! from deflating extracted directions out of the data and repeating.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{orthonormalize, Basis};
use crate::dataset::{ImageDataset, VectorDataset};
use crate::error::Error;
use crate::matrix::{dot, vec_norm, Matrix};
use crate::report::FitReport;
use crate::rng::SplitMix64;

/// Iteration cap per component; sign flapping at `|w^T x| ~ 0` can cycle.
pub const COMPONENT_ITER_CAP: usize = 1000;
/// Magnitude of the seeded perturbation applied when some projection is
/// exactly zero at a fixed point.
pub const PERTURBATION: f64 = 1e-6;

/// Sign pattern (and, in 2-D, chosen column indices) at an iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarityState {
    /// +1 or -1 per sample.
    pub p: Vec<i8>,
    /// Column index per sample; empty in the 1-D case.
    pub q: Vec<usize>,
    /// Iteration the state was computed at.
    pub t: usize,
}

/// Options shared by the deflation fitters.
#[derive(Debug, Clone)]
pub struct L1Options {
    /// Initializations per component; the best objective wins.
    pub restarts: usize,
    pub seed: u64,
    /// Center by the mean before fitting (the R1 pipeline convention).
    pub center: bool,
}

impl Default for L1Options {
    fn default() -> Self {
        L1Options { restarts: 3, seed: 0, center: true }
    }
}

/// `sign(w^T x_i)` per sample, zeros mapped to +1.
pub fn polarity_1d(x: &VectorDataset, w: &[f64]) -> Vec<i8> {
    (0..x.n_samples())
        .map(|i| if dot(&x.sample(i), w) < 0.0 { -1 } else { 1 })
        .collect()
}

/// Per-image max-|projection| column and its sign.
pub fn polarity_2d(f: &ImageDataset, w: &[f64], t: usize) -> PolarityState {
    let mut p = Vec::with_capacity(f.n_images());
    let mut q = Vec::with_capacity(f.n_images());
    for img in f.images() {
        let mut best_col = 0;
        let mut best_abs = -1.0;
        let mut best_val = 0.0;
        for c in 0..img.cols() {
            let v: f64 = (0..img.rows()).map(|r| w[r] * img.get(r, c)).sum();
            let a = libm::fabs(v);
            if a > best_abs {
                best_abs = a;
                best_col = c;
                best_val = v;
            }
        }
        q.push(best_col);
        p.push(if best_val < 0.0 { -1 } else { 1 });
    }
    PolarityState { p, q, t }
}

fn l1_objective_1d(xt: &Matrix, w: &[f64]) -> f64 {
    (0..xt.rows()).map(|i| libm::fabs(dot(xt.row(i), w))).sum()
}

/// Full Eq.-style 2-D objective `sum_i ||w^T F_i||_1`.
pub fn l1_objective_2d(f: &ImageDataset, w: &[f64]) -> f64 {
    f.images()
        .iter()
        .map(|img| {
            (0..img.cols())
                .map(|c| {
                    let v: f64 = (0..img.rows()).map(|r| w[r] * img.get(r, c)).sum();
                    libm::fabs(v)
                })
                .sum::<f64>()
        })
        .sum()
}

fn normalize_or_none(v: &mut [f64]) -> Option<f64> {
    let norm = vec_norm(v);
    if norm == 0.0 {
        return None;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    Some(norm)
}

fn perturb(w: &mut [f64], rng: &mut SplitMix64) {
    let delta = rng.unit_vector(w.len());
    for (wi, di) in w.iter_mut().zip(delta) {
        *wi += PERTURBATION * di;
    }
    normalize_or_none(w).expect("perturbed vector nonzero");
}

/// One L1-PCA component: polarity-flipping fixed-point iteration from
/// `w0`. The zero-projection edge case at a fixed point is nudged with a
/// seeded 1e-6 perturbation, so runs stay reproducible.
pub fn l1_component_1d(
    x: &VectorDataset,
    w0: &[f64],
    seed: u64,
) -> Result<(Vec<f64>, FitReport), Error> {
    if w0.len() != x.dim() {
        return Err(Error::DimensionMismatch);
    }
    if (0..x.n_samples()).all(|i| vec_norm(&x.sample(i)) == 0.0) {
        return Err(Error::DegenerateData);
    }
    let xt = x.data().transpose();
    let mut rng = SplitMix64::new(seed);
    let mut w = w0.to_vec();
    if normalize_or_none(&mut w).is_none() {
        return Err(Error::DegenerateData);
    }

    let mut report = FitReport::default();
    let mut prev_p: Option<Vec<i8>> = None;
    for t in 0..COMPONENT_ITER_CAP {
        let p = polarity_1d(x, &w);
        if prev_p.as_ref() == Some(&p) {
            // fixed polarity; only the exact-zero projection case re-enters
            let has_zero = (0..x.n_samples()).any(|i| dot(xt.row(i), &w) == 0.0);
            if has_zero {
                perturb(&mut w, &mut rng);
                prev_p = None;
                continue;
            }
            report.converged = true;
            break;
        }
        let flipped = match &prev_p {
            Some(prev) => prev.iter().zip(&p).filter(|(a, b)| a != b).count(),
            None => 0,
        };
        let mut next = vec![0.0; x.dim()];
        for (i, &pi) in p.iter().enumerate() {
            let row = xt.row(i);
            for (n, r) in next.iter_mut().zip(row) {
                *n += pi as f64 * r;
            }
        }
        if normalize_or_none(&mut next).is_none() {
            // contributions cancelled exactly; nudge and retry
            perturb(&mut w, &mut rng);
            prev_p = None;
            continue;
        }
        w = next;
        report.iterations = t + 1;
        report.objectives.push(l1_objective_1d(&xt, &w));
        report.flipped_counts.push(flipped);
        prev_p = Some(p);
    }
    Ok((w, report))
}

/// One 2DL1-PCA component: per image, follow the column with the largest
/// projection magnitude and flip its sign into the running sum.
pub fn l1_component_2d(
    f: &ImageDataset,
    w0: &[f64],
    seed: u64,
) -> Result<(Vec<f64>, FitReport), Error> {
    if w0.len() != f.rows() {
        return Err(Error::DimensionMismatch);
    }
    if f.images().iter().all(|img| img.frobenius_norm() == 0.0) {
        return Err(Error::DegenerateData);
    }
    let mut rng = SplitMix64::new(seed);
    let mut w = w0.to_vec();
    if normalize_or_none(&mut w).is_none() {
        return Err(Error::DegenerateData);
    }

    let mut report = FitReport::default();
    let mut prev: Option<PolarityState> = None;
    for t in 0..COMPONENT_ITER_CAP {
        let state = polarity_2d(f, &w, t);
        let same = prev
            .as_ref()
            .map(|s| s.p == state.p && s.q == state.q)
            .unwrap_or(false);
        if same {
            let has_zero = f.images().iter().zip(&state.q).any(|(img, &qi)| {
                let v: f64 = (0..img.rows()).map(|r| w[r] * img.get(r, qi)).sum();
                v == 0.0
            });
            if has_zero {
                perturb(&mut w, &mut rng);
                prev = None;
                continue;
            }
            report.converged = true;
            break;
        }
        let flipped = match &prev {
            Some(s) => s
                .p
                .iter()
                .zip(&state.p)
                .filter(|(a, b)| a != b)
                .count(),
            None => 0,
        };
        let mut next = vec![0.0; f.rows()];
        for (img, (&pi, &qi)) in f.images().iter().zip(state.p.iter().zip(&state.q)) {
            for (r, n) in next.iter_mut().enumerate() {
                *n += pi as f64 * img.get(r, qi);
            }
        }
        if normalize_or_none(&mut next).is_none() {
            perturb(&mut w, &mut rng);
            prev = None;
            continue;
        }
        w = next;
        report.iterations = t + 1;
        report.objectives.push(l1_objective_2d(f, &w));
        report.flipped_counts.push(flipped);
        prev = Some(state);
    }
    Ok((w, report))
}

fn deflate_1d(x: &mut Matrix, w: &[f64]) {
    let (d, n) = (x.rows(), x.cols());
    for s in 0..n {
        let mut coeff = 0.0;
        for i in 0..d {
            coeff += w[i] * x.get(i, s);
        }
        for i in 0..d {
            x.set(i, s, x.get(i, s) - coeff * w[i]);
        }
    }
}

fn initial_candidates_1d(
    x: &VectorDataset,
    restarts: usize,
    rng: &mut SplitMix64,
) -> Vec<Vec<f64>> {
    let mut cands = Vec::with_capacity(restarts);
    // sample of largest norm
    let mut best = 0;
    let mut best_norm = -1.0;
    for i in 0..x.n_samples() {
        let norm = vec_norm(&x.sample(i));
        if norm > best_norm {
            best_norm = norm;
            best = i;
        }
    }
    if best_norm > 0.0 {
        cands.push(x.sample(best));
    }
    if cands.len() < restarts {
        if let Ok(pca) = crate::pca::fit_pca(x, 1) {
            cands.push(pca.column(0));
        }
    }
    while cands.len() < restarts {
        cands.push(rng.unit_vector(x.dim()));
    }
    cands.truncate(restarts.max(1));
    cands
}

/// Greedy k-component L1-PCA: extract a component, project it out of
/// every sample, repeat. Each component tries `opts.restarts`
/// initializations (largest-norm sample, PCA first component of the
/// deflated data, then seeded random directions) and keeps the best
/// objective.
pub fn fit_l1_pca(
    x: &VectorDataset,
    k: usize,
    opts: &L1Options,
) -> Result<(Basis, FitReport), Error> {
    let x = if opts.center { x.center() } else { x.clone() };
    if k == 0 || k > x.dim() {
        return Err(Error::DimensionMismatch);
    }
    let mut rng = SplitMix64::new(opts.seed);
    let mut deflated = x.data().clone();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut report = FitReport::default();
    for j in 0..k {
        let current = VectorDataset::unlabeled(deflated.clone());
        let xt = deflated.transpose();
        let cands = initial_candidates_1d(&current, opts.restarts, &mut rng);
        let mut best: Option<(f64, Vec<f64>, FitReport)> = None;
        for (r, w0) in cands.iter().enumerate() {
            let comp_seed = opts
                .seed
                .wrapping_add(1 + j as u64)
                .wrapping_mul(0x100000001b3)
                .wrapping_add(r as u64);
            let (w, comp_report) = l1_component_1d(&current, w0, comp_seed)?;
            let objective = l1_objective_1d(&xt, &w);
            if best.as_ref().map(|(b, _, _)| objective > *b).unwrap_or(true) {
                best = Some((objective, w, comp_report));
            }
        }
        let (_, w, comp_report) = best.expect("at least one restart");
        report.extend(&comp_report);
        deflate_1d(&mut deflated, &w);
        columns.push(w);
    }
    let basis = orthonormalize(&Matrix::from_columns(&columns)?)?;
    Ok((basis, report))
}

fn deflate_2d(images: &mut [Matrix], w: &[f64]) {
    for img in images.iter_mut() {
        for c in 0..img.cols() {
            let mut coeff = 0.0;
            for r in 0..img.rows() {
                coeff += w[r] * img.get(r, c);
            }
            for r in 0..img.rows() {
                img.set(r, c, img.get(r, c) - coeff * w[r]);
            }
        }
    }
}

fn initial_candidates_2d(
    f: &ImageDataset,
    restarts: usize,
    rng: &mut SplitMix64,
) -> Vec<Vec<f64>> {
    let mut cands = Vec::with_capacity(restarts);
    // column of largest norm across all images
    let mut best: Option<Vec<f64>> = None;
    let mut best_norm = 0.0;
    for img in f.images() {
        for c in 0..img.cols() {
            let col: Vec<f64> = (0..img.rows()).map(|r| img.get(r, c)).collect();
            let norm = vec_norm(&col);
            if norm > best_norm {
                best_norm = norm;
                best = Some(col);
            }
        }
    }
    if let Some(col) = best {
        cands.push(col);
    }
    if cands.len() < restarts {
        if let Ok(base) = crate::pca::fit_2dpca(f, 1) {
            cands.push(base.column(0));
        }
    }
    while cands.len() < restarts {
        cands.push(rng.unit_vector(f.rows()));
    }
    cands.truncate(restarts.max(1));
    cands
}

/// Greedy k-component 2DL1-PCA with the same deflation scheme, run on
/// image matrices. Features of the fitted basis are `W^T F_i` on the
/// original centered data.
pub fn fit_2dl1_pca(
    f: &ImageDataset,
    k: usize,
    opts: &L1Options,
) -> Result<(Basis, FitReport), Error> {
    let f = if opts.center { f.center() } else { f.clone() };
    if k == 0 || k > f.rows() {
        return Err(Error::DimensionMismatch);
    }
    let mut rng = SplitMix64::new(opts.seed);
    let mut images: Vec<Matrix> = f.images().to_vec();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut report = FitReport::default();
    for j in 0..k {
        let current = ImageDataset::unlabeled(images.clone())?;
        let cands = initial_candidates_2d(&current, opts.restarts, &mut rng);
        let mut best: Option<(f64, Vec<f64>, FitReport)> = None;
        for (r, w0) in cands.iter().enumerate() {
            let comp_seed = opts
                .seed
                .wrapping_add(1 + j as u64)
                .wrapping_mul(0x100000001b3)
                .wrapping_add(r as u64);
            let (w, comp_report) = l1_component_2d(&current, w0, comp_seed)?;
            let objective = l1_objective_2d(&current, &w);
            if best.as_ref().map(|(b, _, _)| objective > *b).unwrap_or(true) {
                best = Some((objective, w, comp_report));
            }
        }
        let (_, w, comp_report) = best.expect("at least one restart");
        report.extend(&comp_report);
        deflate_2d(&mut images, &w);
        columns.push(w);
    }
    let basis = orthonormalize(&Matrix::from_columns(&columns)?)?;
    Ok((basis, report))
}

/// Exact maximizer of `||w^T X||_1` over unit vectors, by enumerating all
/// polarity assignments: the optimum is the best `sum p_i x_i` direction.
/// Only sensible at desk scale; refuses `n > 20`.
pub fn brute_force_l1_oracle(x: &VectorDataset) -> Result<(Vec<f64>, f64), Error> {
    let n = x.n_samples();
    if n > 20 {
        return Err(Error::TooLarge);
    }
    let d = x.dim();
    let samples: Vec<Vec<f64>> = (0..n).map(|i| x.sample(i)).collect();
    let mut best_obj = -1.0;
    let mut best_w = vec![0.0; d];
    for mask in 0u32..(1u32 << n) {
        let mut sum = vec![0.0; d];
        for (i, sample) in samples.iter().enumerate() {
            let sign = if mask & (1 << i) != 0 { -1.0 } else { 1.0 };
            for (acc, &v) in sum.iter_mut().zip(sample) {
                *acc += sign * v;
            }
        }
        let norm = vec_norm(&sum);
        if norm > best_obj {
            best_obj = norm;
            best_w = sum;
        }
    }
    if best_obj <= 0.0 {
        return Err(Error::DegenerateData);
    }
    normalize_or_none(&mut best_w).expect("nonzero optimum");
    Ok((best_w, best_obj))
}
