//! Point evaluation of the totient by 64-bit factorization.
//!
//! Trial division handles small factors, deterministic Miller-Rabin
//! certifies primality for the remainder, and Brent's variant of the
//! Pollard rho walk splits composites. Everything is deterministic: the
//! rho parameters come from a fixed xorshift stream seeded by the input.

use alloc::vec::Vec;

use num_integer::Integer;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for the full u64 range with this
/// fixed witness set.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Brent's rho walk; returns a nontrivial factor of odd composite `n`.
fn rho_factor(n: u64) -> u64 {
    debug_assert!(n > 3 && !is_prime(n) && n % 2 == 1);
    let mut seed = n ^ 0x9e37_79b9_7f4a_7c15;
    loop {
        let c = xorshift(&mut seed) % (n - 2) + 1;
        let step = |x: u64| {
            let y = mulmod(x, x, n);
            let z = y + c;
            if z >= n {
                z - n
            } else {
                z
            }
        };
        let mut y = xorshift(&mut seed) % n;
        let (mut q, mut g) = (1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                ys = y;
                let chunk = core::cmp::min(128, r - k);
                for _ in 0..chunk {
                    y = step(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += chunk;
            }
            r <<= 1;
        }
        if g == n {
            // Backtrack one step at a time from the last checkpoint.
            g = 1;
            while g == 1 {
                ys = step(ys);
                g = x.abs_diff(ys).gcd(&n);
            }
        }
        if g != n {
            return g;
        }
    }
}

/// Prime factorization of `n >= 1` as sorted `(prime, exponent)` pairs.
pub fn factor64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorization of 0 is undefined");
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut stack: Vec<u64> = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let d = rho_factor(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

/// Euler totient of a single `n >= 1` via factorization.
pub fn totient_at(n: u64) -> u64 {
    assert!(n >= 1, "totient of 0 is undefined");
    let mut phi = 1u64;
    for (p, e) in factor64(n) {
        phi *= p - 1;
        for _ in 1..e {
            phi *= p;
        }
    }
    phi
}

/// All divisors of `n >= 1`, unsorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = alloc::vec![1u64];
    for (p, e) in factor64(n) {
        let prior = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..prior {
                out.push(out[i] * pk);
            }
        }
    }
    out
}
