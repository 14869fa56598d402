use gonb_core::GonbError;
use thiserror::Error;

/// Failures that originate in the CLI itself rather than the library.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("cone and cylinder regions need a certificate frame (--cert)")]
    RegionFrameMissing,
}

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_FALSIFIED: u8 = 4;

/// Error name for the diagnostic stream and the exit code it maps to.
pub fn classify(e: &anyhow::Error) -> (&'static str, u8) {
    for cause in e.chain() {
        if let Some(c) = cause.downcast_ref::<CliError>() {
            return match c {
                CliError::Parse(_) => ("ParseError", EXIT_CONFIG),
                CliError::RegionFrameMissing => ("RegionFrameMissing", EXIT_CONFIG),
            };
        }
        if let Some(g) = cause.downcast_ref::<GonbError>() {
            let code = match g {
                GonbError::ScanFailure { .. } => EXIT_FALSIFIED,
                GonbError::InvalidInput(_) | GonbError::DimensionMismatch { .. } => EXIT_CONFIG,
                _ => EXIT_PRECONDITION,
            };
            return (g.name(), code);
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return ("IoError", EXIT_CONFIG);
        }
    }
    ("Error", EXIT_CONFIG)
}
