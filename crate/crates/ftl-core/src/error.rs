//! Error type shared by every module in the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes surfaced by the computational kernels.
///
/// `Capacity` is reserved for resource exhaustion (memory budgets,
/// integer overflow in exact accumulators) so that callers can map it to
/// a distinct process exit code. Everything else describes either a
/// violated precondition or a numerical method that could not meet its
/// target on the configured budget.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    Domain(String),
    /// Malformed textual input (decimal parsing).
    Parse(String),
    /// A lookup past the end of a sieved table.
    Bound(String),
    /// Memory budget or exact-integer range exceeded.
    Capacity(String),
    /// Evaluation requested at a pole.
    Pole(String),
    /// Evaluation requested where a series representation diverges.
    Convergence(String),
    /// Point outside the supported analytic region.
    UnsupportedRegion(String),
    /// Requested tolerance unreachable at the configured truncation.
    TailTolerance(String),
    /// Subdivision or iteration budget exhausted before the tolerance.
    Budget(String),
}

impl Error {
    /// True for failures that indicate exhausted capacity rather than a
    /// bad request or an unmet tolerance.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }

    /// True for failures caused by the request itself (domain, parse,
    /// bound, pole, divergence, unsupported region).
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Parse(_)
                | Error::Bound(_)
                | Error::Pole(_)
                | Error::Convergence(_)
                | Error::UnsupportedRegion(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Bound(m) => write!(f, "bound error: {m}"),
            Error::Capacity(m) => write!(f, "capacity error: {m}"),
            Error::Pole(m) => write!(f, "pole error: {m}"),
            Error::Convergence(m) => write!(f, "convergence error: {m}"),
            Error::UnsupportedRegion(m) => write!(f, "unsupported region: {m}"),
            Error::TailTolerance(m) => write!(f, "tail tolerance unreachable: {m}"),
            Error::Budget(m) => write!(f, "budget exceeded: {m}"),
        }
    }
}
