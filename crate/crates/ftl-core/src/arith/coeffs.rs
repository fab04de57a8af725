//! Divisor-weighted totient-difference coefficients.
//!
//! For each n the coefficient is `sum_{d | n} (phi(d) - phi(d-1))`, with
//! the convention `phi(0) = 1` so the d = 1 term vanishes. Their prefix
//! sums form the step function whose asymptotics the analytic modules
//! recover.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::sieve::TotientTable;
use crate::error::{Error, Result};

/// Coefficients and prefix sums up to a limit.
#[derive(Debug, Clone)]
pub struct PhiCoeff {
    limit: u64,
    coeffs: Vec<i64>,
    prefix: Vec<i64>,
}

impl PhiCoeff {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Coefficient at `1 <= n <= limit`.
    #[inline]
    pub fn coeff(&self, n: u64) -> i64 {
        debug_assert!(n >= 1);
        self.coeffs[n as usize]
    }

    /// Prefix sum over `1..=k`; `k = 0` yields 0.
    #[inline]
    pub fn prefix(&self, k: u64) -> i64 {
        self.prefix[k as usize]
    }

    /// Raw coefficients indexed by n; entry 0 is a sentinel zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

/// Builds the coefficient table by a divisor-sum sieve over the
/// totient-difference weights.
pub fn phi_coeffs(limit: u64, table: &TotientTable) -> Result<PhiCoeff> {
    if limit == 0 {
        return Err(Error::Domain(format!("coefficient limit must be >= 1")));
    }
    if limit > table.limit() {
        return Err(Error::Bound(format!(
            "coefficient limit {limit} exceeds table limit {}",
            table.limit()
        )));
    }
    let n = limit as usize;
    let mut coeffs = vec![0i64; n + 1];
    let values = table.values();
    for d in 1..=n {
        // phi(0) = 1 makes the d = 1 weight zero.
        let prev = if d == 1 { 1 } else { i64::from(values[d - 1]) };
        let delta = i64::from(values[d]) - prev;
        if delta == 0 {
            continue;
        }
        let mut m = d;
        while m <= n {
            coeffs[m] += delta;
            m += d;
        }
    }
    let mut prefix = vec![0i64; n + 1];
    let mut acc = 0i64;
    for k in 1..=n {
        acc = acc.checked_add(coeffs[k]).ok_or_else(|| {
            Error::Capacity(format!("prefix sum overflow at {k}"))
        })?;
        prefix[k] = acc;
    }
    Ok(PhiCoeff {
        limit,
        coeffs,
        prefix,
    })
}
