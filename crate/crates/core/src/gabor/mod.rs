//! The short-time Fourier transform of normalized indicator windows,
//! time-frequency sets, the non-vanishing certificate and the orthogonality
//! checks.

mod certificate;
mod orthogonality;
mod stft;
mod tfset;

pub use certificate::{
    build_certificate, certificate_eps, CertificateParams, CertificateProvenance,
    NonZeroCertificate, VerificationStats,
};
pub use orthogonality::{
    check_orthogonality, find_violation_pair, SearchOutcome, SearchStats, ViolationReport,
    CONFIRM_RTOL,
};
pub use stft::{stft_indicator, StftWindow};
pub use tfset::{
    diagonal_basis, min_pairwise_distance, parse_tf_set, LatticeSpec, TfBox, TfSetJson,
    TimeFrequencyPoint, TimeFrequencySet,
};
