//! Sieved Euler totient table.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default construction budget: 1 GiB of table entries.
pub const DEFAULT_BUDGET_BYTES: u64 = 1 << 30;

/// Euler totient values for `1..=limit`, the shared read-only oracle for
/// every exact sum in the crate.
///
/// Entries are `u32`; construction rejects limits whose values could not
/// fit, long before any realistic memory budget is reached.
#[derive(Debug, Clone)]
pub struct TotientTable {
    limit: u64,
    values: Vec<u32>,
}

impl TotientTable {
    /// Sieves totients up to `limit` under the default memory budget.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_BUDGET_BYTES)
    }

    /// Sieves totients up to `limit`, refusing to allocate more than
    /// `budget_bytes`.
    pub fn build_with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Domain(format!("totient table limit must be >= 1")));
        }
        if limit >= u64::from(u32::MAX - 1) {
            return Err(Error::Capacity(format!(
                "totient table limit {limit} exceeds u32 value range"
            )));
        }
        let entries = limit + 1;
        let bytes = entries.saturating_mul(core::mem::size_of::<u32>() as u64);
        if bytes > budget_bytes {
            return Err(Error::Capacity(format!(
                "totient table of {entries} entries ({bytes} bytes) exceeds budget of {budget_bytes} bytes"
            )));
        }
        let n = entries as usize;

        // Start from the identity and strip one factor (1 - 1/p) per prime:
        // when i is reached with values[i] == i it is prime, and every
        // multiple still carries the full power of i, so the division is
        // exact.
        let mut values: Vec<u32> = (0..n as u32).collect();
        let mut i = 2usize;
        while i < n {
            if values[i] == i as u32 {
                let mut j = i;
                while j < n {
                    values[j] -= values[j] / (i as u32);
                    j += i;
                }
            }
            i += 1;
        }
        Ok(TotientTable { limit, values })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// phi(n) for `1 <= n <= limit`; panics outside that range.
    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        debug_assert!(n >= 1, "totient of 0 is not tabulated");
        u64::from(self.values[n as usize])
    }

    /// phi(n) if tabulated.
    pub fn try_phi(&self, n: u64) -> Option<u64> {
        if n >= 1 && n <= self.limit {
            Some(u64::from(self.values[n as usize]))
        } else {
            None
        }
    }

    /// Raw values indexed by n; entry 0 is a sentinel zero.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Exact summatory `sum_{k<=n} phi(k)`.
    pub fn summatory(&self, n: u64) -> i128 {
        assert!(n <= self.limit, "summatory beyond table limit");
        self.values[1..=n as usize]
            .iter()
            .map(|&v| i128::from(v))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force totient by gcd counting; the oracle for every sieve.
    pub fn phi_brute(n: u64) -> u64 {
        use num_integer::Integer;
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn matches_brute_force_up_to_2000() {
        let table = TotientTable::build(2000).unwrap();
        for n in 1..=2000u64 {
            assert_eq!(table.phi(n), phi_brute(n), "phi({n})");
        }
    }

    #[test]
    fn tabulates_expected_spot_values() {
        let table = TotientTable::build(10).unwrap();
        assert_eq!(table.phi(1), 1);
        assert_eq!(table.phi(7), 6);
        assert_eq!(table.phi(10), 4);
        assert_eq!(table.limit(), 10);
        assert_eq!(table.try_phi(11), None);
        assert_eq!(table.try_phi(10), Some(4));
    }

    #[test]
    fn divisor_sums_of_phi_recover_n() {
        // sum_{d | n} phi(d) = n, checked by a divisor-sum sieve.
        let limit = 20_000usize;
        let table = TotientTable::build(limit as u64).unwrap();
        let mut acc = alloc::vec![0u64; limit + 1];
        for d in 1..=limit {
            let v = table.phi(d as u64);
            let mut m = d;
            while m <= limit {
                acc[m] += v;
                m += d;
            }
        }
        for n in 1..=limit {
            assert_eq!(acc[n], n as u64, "divisor sum at {n}");
        }
    }

    #[test]
    fn summatory_approaches_quadratic_main_term() {
        // sum_{n<=x} phi(n) is close to x^2 / (2 zeta(2)) already at 1e6.
        let table = TotientTable::build(1_000_000).unwrap();
        let exact = table.summatory(1_000_000) as f64;
        let main = 1e12 * 3.0 / (core::f64::consts::PI * core::f64::consts::PI);
        let ratio = exact / main;
        assert!((0.999..=1.001).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn rejects_zero_limit_and_tiny_budget() {
        assert!(matches!(TotientTable::build(0), Err(Error::Domain(_))));
        assert!(matches!(
            TotientTable::build_with_budget(1_000_000, 1_000),
            Err(Error::Capacity(_))
        ));
    }
}
