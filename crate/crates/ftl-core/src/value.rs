//! Validated complex points and error-tracked evaluation results.

use alloc::format;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A finite complex evaluation point.
///
/// Construction rejects NaN and infinite components, so every analytic
/// routine can assume its input is a genuine point of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    re: f64,
    im: f64,
}

impl ComplexValue {
    /// Checked constructor; both parts must be finite.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Domain(format!(
                "complex value ({re}, {im}) has non-finite component"
            )));
        }
        Ok(ComplexValue { re, im })
    }

    /// Real evaluation point.
    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Complex64 {
        Complex64::new(v.re, v.im)
    }
}

impl core::fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

/// Kahan-compensated accumulator; complex addition is componentwise, so
/// the compensation argument applies per component. Keeps the rounding
/// of a long head sum near eps * sum|term| instead of growing with the
/// term count.
pub(crate) struct Compensated {
    pub(crate) sum: Complex64,
    carry: Complex64,
}

impl Compensated {
    pub(crate) fn new(seed: Complex64) -> Self {
        Compensated {
            sum: seed,
            carry: Complex64::new(0.0, 0.0),
        }
    }

    pub(crate) fn add(&mut self, term: Complex64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// A computed complex value with an error bound and work counter.
///
/// `err_bound` combines the analytic truncation remainder with a rounding
/// allowance; `terms_used` counts the dominant summation terms, making
/// cost regressions visible in tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_bound: f64,
    pub terms_used: u32,
}

impl EvalResult {
    pub fn new(value: Complex64, err_bound: f64, terms_used: u32) -> Self {
        EvalResult {
            value,
            err_bound,
            terms_used,
        }
    }
}
