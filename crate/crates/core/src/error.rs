use thiserror::Error;

use crate::diagram::Defect;

/// Errors shared across the crate.
///
/// Mathematical "no" answers (a failed domination, a NOT_LINEAR verdict) are
/// never errors; they are ordinary return values. Errors mean the question
/// itself was malformed or a resource limit was hit before an answer existed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid diagram: {}", format_defects(.0))]
    InvalidDiagram(Vec<Defect>),

    #[error("{context}: diagram is not consistent")]
    Inconsistent { context: &'static str },

    #[error("{context}: weighted diagram is not a type (consistent, no extremal free vertex of multiplicity <= 1)")]
    NotAType { context: &'static str },

    #[error("multiplicities required but absent from input")]
    MissingMultiplicities,

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{what} exceeded its cap of {cap}")]
    ResourceExhausted { what: &'static str, cap: u64 },

    #[error("certificate rejected: {0}")]
    BadCertificate(String),
}

fn format_defects(defects: &[Defect]) -> String {
    defects
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures caused by hitting a search or step cap, where the
    /// honest answer is "indeterminate" rather than "no".
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExhausted { .. })
    }
}
