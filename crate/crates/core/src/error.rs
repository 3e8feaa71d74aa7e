use alloc::string::String;

/// Errors raised by the geometry and classification routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid Lie algebra: {0}")]
    Algebra(String),

    #[error("metric is not symmetric (max asymmetry {asymmetry:e})")]
    MetricNotSymmetric { asymmetry: f64 },

    #[error("metric is not positive definite (min eigenvalue {min_eigenvalue:e}, threshold {threshold:e})")]
    MetricNotPositiveDefinite { min_eigenvalue: f64, threshold: f64 },

    #[error("degenerate plane (Gram determinant {gram:e})")]
    DegeneratePlane { gram: f64 },

    #[error("flag plane is not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("zero vector has no Finsler length")]
    ZeroVector,

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("drift norm {norm} violates the bound {bound}")]
    NormBound { norm: f64, bound: f64 },

    #[error("invalid phi family: {0}")]
    Phi(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("lifted metric is not Berwald: {0}")]
    NotBerwald(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
