//! Per-iteration convergence traces emitted by every fitter.

use alloc::vec::Vec;

/// Convergence trace of one fit.
///
/// The R1 fitters fill `update_norms` (Frobenius norm of the
/// pre-orthonormalization update) and `change_norms` (Frobenius change of
/// the sign-canonical iterate); the L1 fitters fill `flipped_counts`
/// (samples whose polarity changed). Both record an `objectives` series:
/// the R1 reconstruction error for the R1 family, the L1 projection norm
/// for the L1 family.
#[derive(Debug, Clone, Default)]
pub struct FitReport {
    pub iterations: usize,
    pub update_norms: Vec<f64>,
    pub change_norms: Vec<f64>,
    pub objectives: Vec<f64>,
    pub flipped_counts: Vec<usize>,
    pub converged: bool,
}

impl FitReport {
    /// Appends the trace of a later stage (deflation components run in
    /// sequence and share one report).
    pub fn extend(&mut self, other: &FitReport) {
        self.iterations += other.iterations;
        self.update_norms.extend_from_slice(&other.update_norms);
        self.change_norms.extend_from_slice(&other.change_norms);
        self.objectives.extend_from_slice(&other.objectives);
        self.flipped_counts.extend_from_slice(&other.flipped_counts);
        self.converged = self.converged && other.converged;
    }
}
