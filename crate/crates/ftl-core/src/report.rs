//! Report rows shared by the verification experiments.

use crate::rational::{to_f64, Rational};

/// An exactly-known quantity carried alongside its floating rendering.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactValue {
    /// Exact integer.
    Int(i128),
    /// Exact rational.
    Ratio(Rational),
    /// Value only available in floating point.
    Real(f64),
}

impl ExactValue {
    /// Nearest-double view, used for normalized errors and ratios.
    pub fn as_f64(&self) -> f64 {
        match self {
            ExactValue::Int(v) => *v as f64,
            ExactValue::Ratio(r) => to_f64(r),
            ExactValue::Real(v) => *v,
        }
    }
}

impl From<i128> for ExactValue {
    fn from(v: i128) -> Self {
        ExactValue::Int(v)
    }
}

impl From<Rational> for ExactValue {
    fn from(v: Rational) -> Self {
        ExactValue::Ratio(v)
    }
}

impl From<f64> for ExactValue {
    fn from(v: f64) -> Self {
        ExactValue::Real(v)
    }
}

/// One comparison row: an exact quantity against a predicted main term.
///
/// The meaning of `normalized_error` and `ratio` is fixed per experiment
/// and documented there; both are always finite. `elapsed_ms` is zero when
/// produced by this crate; callers with a clock fill it in.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub x: f64,
    pub exact: ExactValue,
    pub predicted: f64,
    pub normalized_error: f64,
    pub ratio: f64,
    pub elapsed_ms: f64,
}

impl ReportRow {
    /// Builds a row, insisting on finite derived columns.
    pub fn new(x: f64, exact: ExactValue, predicted: f64, normalized_error: f64, ratio: f64) -> Self {
        assert!(
            normalized_error.is_finite() && ratio.is_finite() && x.is_finite(),
            "report row columns must be finite"
        );
        ReportRow {
            x,
            exact,
            predicted,
            normalized_error,
            ratio,
            elapsed_ms: 0.0,
        }
    }
}
