use thiserror::Error;

/// Every failure the geometry, Fourier and time-frequency layers can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GonbError {
    #[error("polytope is unbounded: some direction recedes")]
    UnboundedPolytope,
    #[error("polytope is empty: the half-space system is infeasible")]
    EmptyPolytope,
    #[error("polytope has empty interior")]
    DegeneratePolytope,
    #[error("facet is not a facet of this polytope")]
    FacetNotInPolytope,
    #[error("polytope is centrally symmetric: no non-symmetric facet pair exists")]
    SymmetricInput,
    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("facet has zero (d-1)-volume")]
    DegenerateFacet,
    #[error("frame does not put the designated facet pair on the first axis: {0}")]
    FrameMismatch(String),
    #[error("frequency is parallel to the facet normal (|sin| = {sin_theta:e})")]
    ParallelDirection { sin_theta: f64 },
    #[error("cone is too wide: a facet normal is orthogonal to a scanned direction (min |sin| = {min_sin:e})")]
    ConeTooWide { min_sin: f64 },
    #[error("window has zero volume")]
    ZeroVolumeWindow,
    #[error("time-frequency set needs at least two points")]
    TooFewPoints,
    #[error("time-frequency set contains a repeated point")]
    DuplicatePoint,
    #[error("non-symmetry margin vanished (eta = {eta:e}) at eps = {eps}")]
    MarginVanished { eps: f64, eta: f64 },
    #[error("scan found |V_gg| = {value:e} <= tol_zero at t = {t:?}, lambda = {lambda:?}")]
    ScanFailure {
        t: Vec<f64>,
        lambda: Vec<f64>,
        value: f64,
    },
    #[error("certificate was built for a different window")]
    CertificateMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl GonbError {
    /// Stable variant name, used on the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            GonbError::UnboundedPolytope => "UnboundedPolytope",
            GonbError::EmptyPolytope => "EmptyPolytope",
            GonbError::DegeneratePolytope => "DegeneratePolytope",
            GonbError::FacetNotInPolytope => "FacetNotInPolytope",
            GonbError::SymmetricInput => "SymmetricInput",
            GonbError::DegenerateSimplex => "DegenerateSimplex",
            GonbError::DegenerateFacet => "DegenerateFacet",
            GonbError::FrameMismatch(_) => "FrameMismatch",
            GonbError::ParallelDirection { .. } => "ParallelDirection",
            GonbError::ConeTooWide { .. } => "ConeTooWide",
            GonbError::ZeroVolumeWindow => "ZeroVolumeWindow",
            GonbError::TooFewPoints => "TooFewPoints",
            GonbError::DuplicatePoint => "DuplicatePoint",
            GonbError::MarginVanished { .. } => "MarginVanished",
            GonbError::ScanFailure { .. } => "ScanFailure",
            GonbError::CertificateMismatch => "CertificateMismatch",
            GonbError::DimensionMismatch { .. } => "DimensionMismatch",
            GonbError::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, GonbError>;
