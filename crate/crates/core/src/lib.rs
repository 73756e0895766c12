//! Robust subspace estimation for dimensionality reduction.
//!
//! Implements four robust principal-component fitters alongside the
//! classic baselines:
//!
//! * [`pca::fit_pca`] / [`pca::fit_2dpca`] — standard PCA on vector samples
//!   and 2DPCA on image matrices (also used to initialize the R1 family),
//! * [`r1::fit_r1_pca`] / [`r1::fit_2dr1_pca`] — Cauchy-weighted covariance
//!   subspace iteration, robust to outlying samples,
//! * [`l1::fit_l1_pca`] / [`l1::fit_2dl1_pca`] — greedy polarity-flipping
//!   maximization of the L1 projection norm with deflation.
//!
//! The crate is `no_std` + `alloc`; all IO, file formats and the benchmark
//! CLI live in the companion `robust-subspace-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod basis;
pub mod dataset;
pub mod eigen;
pub mod error;
pub mod l1;
pub mod matrix;
pub mod pca;
pub mod r1;
pub mod recognition;
pub mod report;
pub mod rng;

pub use basis::Basis;
pub use dataset::{ImageDataset, LabeledSplit, VectorDataset};
pub use eigen::EigenPairs;
pub use error::Error;
pub use matrix::Matrix;
pub use report::FitReport;

/// Tolerances used by construction invariants and convergence checks.
/// Exposed so tests assert against the same constants the library uses.
pub mod tol {
    /// Max-norm bound on `W^T W - I` for any constructed [`crate::Basis`].
    pub const BASIS_ORTHONORMALITY: f64 = 1e-8;
    /// Relative residual bound for each eigenpair returned by
    /// [`crate::eigen::symmetric_eig`].
    pub const EIGEN_RESIDUAL: f64 = 1e-9;
    /// Relative off-diagonal mass at which Jacobi sweeps stop.
    pub const JACOBI_OFF_DIAG: f64 = 1e-12;
    /// Jacobi sweep cap before `NoConvergence`.
    pub const JACOBI_MAX_SWEEPS: usize = 100;
    /// Relative symmetry tolerance accepted by the eigensolver.
    pub const SYMMETRY: f64 = 1e-10;
    /// Relative column-residual threshold below which orthonormalization
    /// reports rank deficiency.
    pub const RANK_DEFICIENT: f64 = 1e-12;
    /// Default Frobenius-change convergence tolerance of the R1 fitters.
    pub const R1_CHANGE: f64 = 1e-6;
    /// Eigenvalue floor (relative to trace) below which PCA treats a
    /// direction as absent.
    pub const RANK_FLOOR: f64 = 1e-12;
}
