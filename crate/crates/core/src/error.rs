use core::fmt;

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix construction rejected the shape or entries.
    InvalidMatrix(&'static str),
    /// Operand shapes do not agree.
    DimensionMismatch,
    /// A column collapsed during orthonormalization.
    RankDeficient,
    /// Eigensolver input is not symmetric within tolerance.
    NotSymmetric,
    /// Jacobi sweeps exhausted without reaching the off-diagonal target.
    NoConvergence,
    /// Covariance spectrum has fewer usable eigenvalues than requested.
    RankTooLow,
    /// An operation that needs at least one element got none.
    EmptyInput,
    /// A subject has too few images for the requested split.
    InsufficientImagesForSubject,
    /// All samples are zero; no direction can be extracted.
    DegenerateData,
    /// Brute-force enumeration refused an instance that is too large.
    TooLarge,
    /// Classification requested with an empty training set.
    EmptyTrainSet,
    /// Label lists of different lengths.
    LengthMismatch,
    /// Samples were centered with a different mean than the fitted model.
    MeanMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidMatrix(why) => write!(f, "invalid matrix: {why}"),
            Error::DimensionMismatch => write!(f, "operand dimensions do not agree"),
            Error::RankDeficient => write!(f, "rank-deficient input to orthonormalization"),
            Error::NotSymmetric => write!(f, "matrix is not symmetric within tolerance"),
            Error::NoConvergence => write!(f, "eigensolver did not converge within the sweep cap"),
            Error::RankTooLow => write!(f, "covariance rank lower than requested component count"),
            Error::EmptyInput => write!(f, "empty input"),
            Error::InsufficientImagesForSubject => {
                write!(f, "a subject has too few images for the requested split")
            }
            Error::DegenerateData => write!(f, "all samples are zero"),
            Error::TooLarge => write!(f, "instance too large for exhaustive enumeration"),
            Error::EmptyTrainSet => write!(f, "empty training set"),
            Error::LengthMismatch => write!(f, "label lists have different lengths"),
            Error::MeanMismatch => write!(f, "samples centered with a different mean than the model"),
        }
    }
}

impl core::error::Error for Error {}
