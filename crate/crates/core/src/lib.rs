//! Polytope windows for Gabor systems.
//!
//! The crate is organized in three layers:
//!
//! * [`polytope`]: half-space geometry, facets, translate-intersections
//!   `Omega ∩ (Omega + t)`, the parallel-facet symmetry test and the
//!   Hausdorff metric.
//! * [`fourier`]: exact Fourier transforms of polytope indicators and facet
//!   surface measures, two independent quadrature oracles, and the
//!   divergence-theorem split with its cone bound.
//! * [`gabor`]: the short-time Fourier transform of the normalized indicator
//!   window, time-frequency set diagnostics, the non-vanishing certificate
//!   and the orthogonality checker.

pub mod error;
pub mod fourier;
pub mod gabor;
pub mod linalg;
pub mod polytope;
pub mod sampling;

pub use error::{GonbError, Result};
pub use num_complex::Complex64;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    mod symmetry {}
    #[doc = include_str!("../../../book/src/fourier.md")]
    mod fourier {}
    #[doc = include_str!("../../../book/src/divergence.md")]
    mod divergence {}
    #[doc = include_str!("../../../book/src/stft.md")]
    mod stft {}
    #[doc = include_str!("../../../book/src/certificate.md")]
    mod certificate {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
