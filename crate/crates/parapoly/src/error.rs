//! Error type shared across the crate.
//!
//! Variants are grouped by how the command-line tool maps them to exit codes:
//! truncation-window exhaustion is distinguished from verification mismatches
//! and from malformed input, because callers react differently to each.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Long division requires the divisor's lowest t-level to be a single
    /// monomial with coefficient +1 or -1.
    #[error("division requires a unit-monomial leading coefficient, found {found}")]
    NonUnitLeading { found: String },

    /// A coefficient beyond the series' truncation window was requested.
    #[error("coefficient of t^{requested} requested, but series is only known below t^{trunc_t}")]
    OutsideTruncation { requested: i64, trunc_t: i64 },

    /// The configured truncation window cannot certify the requested order.
    #[error("truncation insufficient for {what}: need window at least {required}, have {available}")]
    TruncationInsufficient {
        required: i64,
        available: i64,
        what: String,
    },

    /// A substitution or divisor violates the preconditions that keep
    /// truncation windows sound.
    #[error("unsupported series operation: {0}")]
    BadOperation(String),

    /// Column/overlap data does not describe a valid staircase polyomino.
    #[error("invalid polyomino data: {0}")]
    InvalidPolyomino(String),

    /// A step sequence is not a well-formed Dyck path.
    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(String),

    /// An orbit count was not an exact integer (group-average divisibility
    /// failed), indicating an internal inconsistency.
    #[error("non-integral orbit count while {0}")]
    NonIntegral(String),

    /// An inclusion-exclusion count came out negative, indicating an
    /// internal inconsistency.
    #[error("negative count while {0}")]
    NegativeCount(String),

    /// Two independently computed values that must agree did not.
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),

    /// Malformed textual input (CLI arguments, polyomino literals).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI reports for this error:
    /// 1 = verification mismatch / internal inconsistency,
    /// 2 = malformed input,
    /// 3 = truncation window too small for the request.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TruncationInsufficient { .. } => 3,
            Error::Parse(_) | Error::InvalidPolyomino(_) | Error::InvalidDyckPath(_) => 2,
            _ => 1,
        }
    }
}
