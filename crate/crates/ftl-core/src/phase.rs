//! Phase-accurate negative powers n^{-s}.
//!
//! At height t a plain complex power carries phase error ~ eps * t * ln n;
//! binomial moment closures multiply that by |s|^k and turn it into the
//! dominant error at Perron heights. Reducing t * ln n modulo 2 pi in
//! double-double arithmetic keeps every term honest to a few ulps.
//! Integer logarithms come from exact prime seeds extended by
//! ln(2n) = ln 2 + ln n and ln(2n+1) = ln(2n) + log1p(1/(2n)), so the
//! seeded table error stays near 1e-17 for every index.

use alloc::vec::Vec;

use num_complex::Complex64;

/// (p, hi, lo) with hi + lo = ln p to ~1e-33, for every prime <= 64.
const LN_PRIMES: [(u32, f64, f64); 18] = [
    (2, 0.6931471805599453, 2.3190468138462996e-17),
    (3, 1.0986122886681098, -9.07129723500153e-17),
    (5, 1.6094379124341003, 9.280081691085902e-17),
    (7, 1.9459101490553132, 7.323586207904907e-17),
    (11, 2.3978952727983707, -1.253584211423161e-16),
    (13, 2.5649493574615367, -2.5580975097208856e-18),
    (17, 2.833213344056216, -8.500696635386325e-17),
    (19, 2.9444389791664403, 1.9776172119535626e-16),
    (23, 3.1354942159291497, 1.5758359867283186e-17),
    (29, 3.367295829986474, -1.1553104240685565e-16),
    (31, 3.4339872044851463, -2.5863763694297672e-17),
    (37, 3.6109179126442243, 9.643918385970854e-17),
    (41, 3.713572066704308, -1.4628004942704776e-16),
    (43, 3.7612001156935624, 3.879508085699725e-17),
    (47, 3.8501476017100584, 1.5534199491592608e-16),
    (53, 3.970291913552122, -1.3098078310631424e-16),
    (59, 4.07753744390572, -2.5451232614395796e-16),
    (61, 4.110873864173311, -1.0515756814070423e-16),
];

/// 2 pi = TAU + TWO_PI_LO to ~1e-32.
const TWO_PI_LO: f64 = 2.4492935982947064e-16;

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // Requires |a| >= |b|.
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn dd_add(ah: f64, al: f64, bh: f64, bl: f64) -> (f64, f64) {
    let (s, e) = two_sum(ah, bh);
    quick_two_sum(s, e + al + bl)
}

/// Dekker product: a * b as a rounded value plus exact residual.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    const SPLIT: f64 = 134_217_729.0; // 2^27 + 1
    let p = a * b;
    let ca = SPLIT * a;
    let ah = ca - (ca - a);
    let al = a - ah;
    let cb = SPLIT * b;
    let bh = cb - (cb - b);
    let bl = b - bh;
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

/// e^{-i t (h + l)} with the phase reduced modulo 2 pi before sin/cos.
#[inline]
pub(crate) fn cis_neg(t: f64, h: f64, l: f64) -> Complex64 {
    let (p, pe) = two_prod(t, h);
    let k = libm::round(p / core::f64::consts::TAU);
    let (q, qe) = two_prod(k, core::f64::consts::TAU);
    let r = ((p - q) - qe) - k * TWO_PI_LO + (pe + t * l);
    let (sin_r, cos_r) = libm::sincos(r);
    Complex64::new(cos_r, -sin_r)
}

/// ln x as a double-double via one exp refinement (error ~ 1 ulp of exp,
/// independent of the size of ln x).
#[inline]
pub(crate) fn dd_log(x: f64) -> (f64, f64) {
    let h = libm::log(x);
    let l = libm::log1p(x * libm::exp(-h) - 1.0);
    (h, l)
}

/// x^{-(sigma + i t)} given the double-double logarithm of x.
#[inline]
pub(crate) fn pow_neg_phase(h: f64, l: f64, sigma: f64, t: f64) -> Complex64 {
    let mag = libm::exp(-sigma * h) * (1.0 - sigma * l);
    mag * cis_neg(t, h, l)
}

/// Double-double integer logarithms plus sigma-keyed magnitudes n^{-sigma},
/// grown on demand and reused across evaluations on a fixed-sigma line.
pub struct PowTable {
    log_hi: Vec<f64>,
    log_lo: Vec<f64>,
    sigma: f64,
    mags: Vec<f64>,
}

impl Default for PowTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PowTable {
    pub fn new() -> Self {
        PowTable {
            log_hi: Vec::new(),
            log_lo: Vec::new(),
            sigma: f64::NAN,
            mags: Vec::new(),
        }
    }

    fn seed_log(&self, n: usize) -> (f64, f64) {
        debug_assert!(n >= 2);
        if n % 2 == 0 {
            let (_, h2, l2) = LN_PRIMES[0];
            return dd_add(self.log_hi[n / 2], self.log_lo[n / 2], h2, l2);
        }
        if n <= 63 {
            // Odd and small: peel the smallest prime factor.
            for &(p, h, l) in &LN_PRIMES {
                let p = p as usize;
                if p > n {
                    break;
                }
                if n == p {
                    return (h, l);
                }
                if n % p == 0 {
                    return dd_add(self.log_hi[n / p], self.log_lo[n / p], h, l);
                }
            }
            unreachable!("odd n <= 63 has a prime factor <= 61");
        }
        // Odd and large: step from n - 1; log1p(1/(n-1)) is small enough
        // that its ulp is far below the table's accuracy target.
        let step = libm::log1p(1.0 / (n as f64 - 1.0));
        dd_add(self.log_hi[n - 1], self.log_lo[n - 1], step, 0.0)
    }

    /// Grow to cover 0..=n_max and key magnitudes to `sigma`.
    pub(crate) fn ensure(&mut self, sigma: f64, n_max: usize) {
        if self.log_hi.is_empty() {
            self.log_hi.extend_from_slice(&[0.0, 0.0]);
            self.log_lo.extend_from_slice(&[0.0, 0.0]);
        }
        while self.log_hi.len() <= n_max {
            let n = self.log_hi.len();
            let (h, l) = self.seed_log(n);
            self.log_hi.push(h);
            self.log_lo.push(l);
        }
        if self.sigma != sigma {
            self.sigma = sigma;
            self.mags.clear();
        }
        if self.mags.is_empty() {
            self.mags.extend_from_slice(&[0.0, 1.0]);
        }
        while self.mags.len() <= n_max {
            let n = self.mags.len();
            let mag = libm::exp(-sigma * self.log_hi[n]) * (1.0 - sigma * self.log_lo[n]);
            self.mags.push(mag);
        }
    }

    #[inline]
    pub(crate) fn log_hi(&self, n: usize) -> f64 {
        self.log_hi[n]
    }

    #[inline]
    pub(crate) fn log_lo(&self, n: usize) -> f64 {
        self.log_lo[n]
    }

    /// n^{-sigma} for the keyed sigma.
    #[inline]
    pub(crate) fn mag(&self, n: usize) -> f64 {
        self.mags[n]
    }

}
