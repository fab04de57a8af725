//! Exact arithmetic for the floor-totient partial sum and its relatives.
//!
//! All evaluation points are exact rationals, all floors are integer
//! divisions, and all accumulators are checked 128-bit integers, so every
//! result here is exact or an error; nothing rounds.

mod coeffs;
mod factor;
mod sieve;

pub use coeffs::{phi_coeffs, PhiCoeff};
pub use factor::{divisors, factor64, is_prime, totient_at};
pub use sieve::{TotientTable, DEFAULT_BUDGET_BYTES};

use alloc::format;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{floor_div, floor_u64, Rational};
use crate::report::ExactValue;

/// Summation strategy for the floor-totient sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    /// One totient lookup per summand; requires the table to reach x.
    Naive,
    /// Walk the O(sqrt x) blocks where the floor quotient is constant.
    Block,
}

/// Result of an exact summation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSumResult {
    pub x: Rational,
    pub value: ExactValue,
    pub method: SumMethod,
}

/// Totient lookups backed by the sieve, falling back to point
/// factorization beyond the table limit.
#[derive(Debug)]
pub struct TotientOracle {
    table: TotientTable,
}

impl TotientOracle {
    pub fn new(table: TotientTable) -> Self {
        TotientOracle { table }
    }

    pub fn table(&self) -> &TotientTable {
        &self.table
    }

    /// phi(n) for any `n >= 1`.
    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        match self.table.try_phi(n) {
            Some(v) => v,
            None => totient_at(n),
        }
    }
}

fn require_x_at_least(x: &Rational, bound: u64) -> Result<()> {
    if *x < Rational::from_integer(i128::from(bound)) {
        return Err(Error::Domain(format!("x = {x} must be >= {bound}")));
    }
    Ok(())
}

fn checked_add(a: i128, b: i128, what: &str) -> Result<i128> {
    a.checked_add(b)
        .ok_or_else(|| Error::Capacity(format!("overflow accumulating {what}")))
}

fn checked_mul(a: i128, b: i128, what: &str) -> Result<i128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Capacity(format!("overflow in {what}")))
}

/// The partial sum `sum_{n <= x} phi(floor(x/n))`.
///
/// Both methods agree exactly; the naive method needs the table to reach
/// `floor(x)`, while the block method needs only the O(sqrt x) distinct
/// quotients and falls back to point factorization for values past the
/// table.
pub fn s_phi(x: &Rational, oracle: &TotientOracle, method: SumMethod) -> Result<ExactSumResult> {
    require_x_at_least(x, 1)?;
    let n_max = floor_u64(x)?;
    let mut sum: i128 = 0;
    match method {
        SumMethod::Naive => {
            if n_max > oracle.table().limit() {
                return Err(Error::Bound(format!(
                    "naive summation needs the table to reach {n_max}, limit is {}",
                    oracle.table().limit()
                )));
            }
            for n in 1..=n_max {
                let v = floor_div(x, n)?;
                sum = checked_add(sum, i128::from(oracle.table().phi(v)), "floor-totient sum")?;
            }
        }
        SumMethod::Block => {
            // On each block the quotient v = floor(x/n) is constant and the
            // block ends at floor(x/v).
            let mut n = 1u64;
            while n <= n_max {
                let v = floor_div(x, n)?;
                debug_assert!(v >= 1);
                let n_hi = core::cmp::min(n_max, floor_div(x, v)?);
                debug_assert!(n_hi >= n);
                let count = i128::from(n_hi - n + 1);
                let term = checked_mul(i128::from(oracle.phi(v)), count, "block term")?;
                sum = checked_add(sum, term, "floor-totient sum")?;
                n = n_hi + 1;
            }
        }
    }
    Ok(ExactSumResult {
        x: *x,
        value: ExactValue::Int(sum),
        method,
    })
}

/// The quotient-weighted difference sum `sum_{n <= x} floor(x/n) *
/// (phi(n) - phi(n-1))`, read off the coefficient prefix table.
///
/// It always equals the floor-totient sum minus `floor(x)`.
pub fn t_phi(x: &Rational, coeffs: &PhiCoeff) -> Result<i128> {
    require_x_at_least(x, 1)?;
    let k = floor_u64(x)?;
    if k > coeffs.limit() {
        return Err(Error::Bound(format!(
            "floor(x) = {k} exceeds coefficient limit {}",
            coeffs.limit()
        )));
    }
    Ok(i128::from(coeffs.prefix(k)))
}

/// Cesaro-weighted coefficient sum `sum_{n <= x} c(n) * (1 - n/x)` as an
/// exact rational.
pub fn t_phi_weighted(x: &Rational, coeffs: &PhiCoeff) -> Result<Rational> {
    require_x_at_least(x, 1)?;
    let k = floor_u64(x)?;
    if k > coeffs.limit() {
        return Err(Error::Bound(format!(
            "floor(x) = {k} exceeds coefficient limit {}",
            coeffs.limit()
        )));
    }
    let p = *x.numer();
    let q = *x.denom();
    // (1 - n/x) = (p - n q) / p with x = p/q in lowest terms.
    let mut numer: i128 = 0;
    for n in 1..=k {
        let c = coeffs.coeff(n);
        if c == 0 {
            continue;
        }
        let weight = p - checked_mul(i128::from(n), q, "weight")?;
        numer = checked_add(
            numer,
            checked_mul(i128::from(c), weight, "weighted term")?,
            "weighted sum",
        )?;
    }
    Ok(Rational::new(numer, p))
}

/// Exact `integral_{1}^{x}` of the floor-totient sum, using that the sum
/// is constant on `[k, k+1)`: whole steps plus a fractional last step.
pub fn integral_s_phi(x: &Rational, coeffs: &PhiCoeff) -> Result<Rational> {
    require_x_at_least(x, 1)?;
    let k = floor_u64(x)?;
    if k > coeffs.limit() {
        return Err(Error::Bound(format!(
            "floor(x) = {k} exceeds coefficient limit {}",
            coeffs.limit()
        )));
    }
    // The sum at integer m is m + prefix(m).
    let mut whole: i128 = 0;
    for m in 1..k {
        let s_m = checked_add(i128::from(m), i128::from(coeffs.prefix(m)), "step value")?;
        whole = checked_add(whole, s_m, "step integral")?;
    }
    let frac = x - Rational::from_integer(i128::from(k));
    if frac.is_zero() {
        return Ok(Rational::from_integer(whole));
    }
    let s_k = checked_add(i128::from(k), i128::from(coeffs.prefix(k)), "step value")?;
    // whole + frac * s_k, assembled with checked integer arithmetic.
    let numer = checked_add(
        checked_mul(whole, *frac.denom(), "integral numerator")?,
        checked_mul(*frac.numer(), s_k, "integral numerator")?,
        "integral numerator",
    )?;
    Ok(Rational::new(numer, *frac.denom()))
}

/// Counts divisors d of n with `gcd(d, floor(d x / n)) = 1`.
pub fn tau_x(x: &Rational, n: u64) -> Result<u64> {
    require_x_at_least(x, 1)?;
    if n == 0 || Rational::from_integer(i128::from(n)) > *x {
        return Err(Error::Domain(format!("n = {n} must satisfy 1 <= n <= x")));
    }
    let p = *x.numer();
    let q = *x.denom();
    let mut count = 0u64;
    for d in divisors(n) {
        // floor(d x / n) = floor(d p / (q n)), exactly.
        let dp = checked_mul(i128::from(d), p, "divisor scaling")?;
        let qn = checked_mul(q, i128::from(n), "divisor scaling")?;
        let m = dp.div_euclid(qn);
        let m = u64::try_from(m)
            .map_err(|_| Error::Capacity(format!("floor {m} exceeds u64")))?;
        if d.gcd(&m) == 1 {
            count += 1;
        }
    }
    Ok(count)
}
