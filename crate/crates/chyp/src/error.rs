use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, ChypError>;

#[derive(Debug, Error)]
pub enum ChypError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max asymmetry {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("vectors are linearly dependent (det S = {det:?})")]
    DependentVectors { det: Option<Complex64> },

    #[error("theta = {theta} outside the moduli interval [{lo}, {hi}]")]
    ThetaOutOfRange { theta: f64, lo: f64, hi: f64 },

    #[error("restricted form has signature ({pos},{neg},{zero}), expected (2,1,0)")]
    DegenerateForm { pos: usize, neg: usize, zero: usize },

    #[error("matrix does not preserve the Hermitian form (residual {residual:.3e})")]
    NotIsometry { residual: f64 },

    #[error("polar vector must have positive norm, got {norm:.6e}")]
    NotPositiveVector { norm: f64 },

    #[error("word is not parabolic; tangency check requires a parabolic element")]
    NotParabolic,

    #[error("constraint zero locus is empty (min {min:.6e} > 0)")]
    EmptyLocus { min: f64 },

    #[error("certified minimization requires a trigonometric expansion")]
    CertifiedNeedsPoly,

    #[error("point does not lie in the expected complex line (residual {residual:.3e})")]
    SpanCheckFailed { residual: f64 },

    #[error("group invariant violated: {0}")]
    GroupInvariant(String),

    #[error("fourier fit did not converge (residual {residual:.3e} at degree {degree})")]
    FourierFit { residual: f64, degree: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("facet witness not found for {facet}")]
    NoWitness { facet: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
