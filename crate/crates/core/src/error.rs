use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level {level} too small for {lambda}: need at least {required}")]
    LevelTooSmall {
        lambda: Partition,
        level: usize,
        required: usize,
    },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),

    #[error("{0} is not a supported characteristic (expected 0 or a prime below 65536)")]
    BadCharacteristic(u32),

    #[error("level {n} is below the validity threshold {threshold}")]
    BelowThreshold { n: usize, threshold: usize },

    #[error("not a relation in the Grothendieck group of S_{m} over F_{p}")]
    NotARelation { m: usize, p: u32 },

    #[error("{lambda} is {p}-singular")]
    PSingular { lambda: Partition, p: u32 },

    #[error("{lambda} is {p}-regular")]
    PRegular { lambda: Partition, p: u32 },

    #[error("{what} of size {size} exceeds the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("internal limit reached: {0}")]
    InternalLimit(String),

    #[error("module is not certified irreducible")]
    NotCertified,

    #[error("decomposition matrix for n={n}, p={p} unavailable: {reason}")]
    DecompositionUnavailable { n: usize, p: u32, reason: String },

    #[error("range too small: need at least {needed} points, got {got}")]
    RangeTooSmall { needed: usize, got: usize },

    #[error("expected a class in the {expected} basis, got {got}")]
    BasisMismatch { expected: String, got: String },

    #[error("invalid representation: {0}")]
    InvalidRep(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short stable code used in machine-readable error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::LevelTooSmall { .. } => "level-too-small",
            Error::SizeMismatch { .. } => "size-mismatch",
            Error::CharacteristicMismatch(..) => "characteristic-mismatch",
            Error::BadCharacteristic(_) => "bad-characteristic",
            Error::BelowThreshold { .. } => "below-threshold",
            Error::NotARelation { .. } => "not-a-relation",
            Error::PSingular { .. } => "p-singular-input",
            Error::PRegular { .. } => "p-regular-input",
            Error::SizeLimit { .. } => "size-limit",
            Error::InternalLimit(_) => "internal-limit",
            Error::NotCertified => "not-certified-irreducible",
            Error::DecompositionUnavailable { .. } => "decomposition-matrix-unavailable",
            Error::RangeTooSmall { .. } => "range-too-small",
            Error::BasisMismatch { .. } => "basis-mismatch",
            Error::InvalidRep(_) => "invalid-representation",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// True for errors caused by configured resource limits.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::SizeLimit { .. } | Error::InternalLimit(_) | Error::DecompositionUnavailable { .. }
        )
    }
}

/// Accepts 0 (the characteristic-zero mode) or a prime below 2^16.
pub fn check_characteristic(p: u32) -> Result<()> {
    if p == 0 || (p < 65536 && is_prime(p)) {
        Ok(())
    } else {
        Err(Error::BadCharacteristic(p))
    }
}

/// Like [`check_characteristic`] but rejects 0.
pub fn check_prime(p: u32) -> Result<()> {
    if p != 0 && p < 65536 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadCharacteristic(p))
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
