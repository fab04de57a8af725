//! Exact rational evaluation points.
//!
//! Real-valued inputs enter as decimal strings and are converted to exact
//! rationals before any floor is taken, so results never depend on binary
//! rounding of values like `10.0` or `3.5`.

use alloc::format;
use alloc::string::String;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

/// Largest power of ten representable in `i128`.
const MAX_POW10: u32 = 38;

fn pow10(k: u32) -> Result<i128> {
    if k > MAX_POW10 {
        return Err(Error::Capacity(format!("power of ten 10^{k} exceeds i128")));
    }
    Ok(10i128.pow(k))
}

/// Parses a decimal string (`"10"`, `"3.5"`, `"1e6"`, `"-0.25e-2"`) into an
/// exact rational. Scientific notation takes an integer exponent.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(String::from("empty decimal string")));
    }
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let negative = match bytes[0] {
        b'+' => {
            pos += 1;
            false
        }
        b'-' => {
            pos += 1;
            true
        }
        _ => false,
    };

    let mut mantissa: i128 = 0;
    let mut int_digits = 0usize;
    let mut frac_digits = 0u32;
    let mut seen_point = false;

    while pos < bytes.len() {
        match bytes[pos] {
            b'0'..=b'9' => {
                let d = (bytes[pos] - b'0') as i128;
                mantissa = mantissa
                    .checked_mul(10)
                    .and_then(|m| m.checked_add(d))
                    .ok_or_else(|| Error::Capacity(format!("decimal '{s}' exceeds i128")))?;
                if seen_point {
                    frac_digits += 1;
                } else {
                    int_digits += 1;
                }
                pos += 1;
            }
            b'.' if !seen_point => {
                seen_point = true;
                pos += 1;
            }
            b'e' | b'E' => break,
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{}' in decimal '{s}'",
                    other as char
                )))
            }
        }
    }
    if int_digits == 0 && frac_digits == 0 {
        return Err(Error::Parse(format!("no digits in decimal '{s}'")));
    }

    let mut exponent: i64 = 0;
    if pos < bytes.len() {
        // bytes[pos] is 'e' or 'E'.
        let exp_str = &s[pos + 1..];
        if exp_str.is_empty() {
            return Err(Error::Parse(format!("missing exponent in '{s}'")));
        }
        exponent = exp_str
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad exponent in '{s}'")))?;
    }

    let net = exponent - i64::from(frac_digits);
    let mut numer = if negative { -mantissa } else { mantissa };
    let mut denom: i128 = 1;
    if net >= 0 {
        let scale = pow10(u32::try_from(net).map_err(|_| {
            Error::Capacity(format!("exponent {exponent} out of range in '{s}'"))
        })?)?;
        numer = numer
            .checked_mul(scale)
            .ok_or_else(|| Error::Capacity(format!("decimal '{s}' exceeds i128")))?;
    } else {
        denom = pow10(u32::try_from(-net).map_err(|_| {
            Error::Capacity(format!("exponent {exponent} out of range in '{s}'"))
        })?)?;
    }
    Ok(Rational::new(numer, denom))
}

/// Floor of a nonnegative rational as `u64`.
pub fn floor_u64(x: &Rational) -> Result<u64> {
    if x.is_negative() {
        return Err(Error::Domain(format!("floor of negative value {x}")));
    }
    let f = x.floor().to_integer();
    u64::try_from(f).map_err(|_| Error::Capacity(format!("floor {f} exceeds u64")))
}

/// Exact floor of `x / n` for a positive rational `x` and integer `n >= 1`.
pub fn floor_div(x: &Rational, n: u64) -> Result<u64> {
    let denom = x
        .denom()
        .checked_mul(i128::from(n))
        .ok_or_else(|| Error::Capacity(String::from("denominator overflow in floor_div")))?;
    let q = x.numer().div_euclid(denom);
    u64::try_from(q).map_err(|_| Error::Capacity(format!("floor {q} exceeds u64")))
}

/// Rational from an unsigned integer.
pub fn from_u64(n: u64) -> Rational {
    Rational::from_integer(i128::from(n))
}

/// Nearest-double rendering of a rational, adequate for report columns.
pub fn to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let n = *x.numer() as f64;
    let d = *x.denom() as f64;
    n / d
}
