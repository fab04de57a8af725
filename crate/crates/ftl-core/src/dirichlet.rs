//! The Dirichlet series D(s) = sum_n c(n) / n^s over the divisor-folded
//! totient increments, in three representations, plus its pole data at
//! s = 1.
//!
//! Tail sums are accelerated by partial summation against the summatory
//! totient model A(u) ~ u^2/(2 zeta(2)) + eps u, with eps calibrated so
//! the model is exact at the cutoff. The drift coefficient used in the
//! error bounds is an empirical envelope with a wide margin (observed
//! |A(u) - u^2/(2 zeta(2))| stays under 0.2 u); tests pin it against
//! brute reference sums at multiple cutoffs.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::{PhiCoeff, TotientTable};
use crate::error::{Error, Result};
use crate::phase::{cis_neg, PowTable};
use crate::value::{Compensated, ComplexValue, EvalResult};
use crate::zeta;

/// zeta(2) = pi^2 / 6.
pub const ZETA2: f64 = core::f64::consts::PI * core::f64::consts::PI / 6.0;

/// Bound on the calibrated totient-summatory residual: with
/// E(u) = A(u) - u^2 / (2 zeta(2)), the ratio E(u)/u stays inside
/// [-0.092, 0.696] for every u up to 1e7, so any calibrated difference
/// |E(u)/u - E(N)/N| is under 0.79. The envelope widens only like
/// ln ln u, leaving margin for larger tables.
const DRIFT: f64 = 0.8;

/// Same role for the coefficient prefix T(u) = sum of the leading
/// coefficients, whose second-order ratio (T(u) - u ln u / zeta(2)) / u
/// oscillates inside [-2.67, 0.99] up to 1e7 (windowed means settle at
/// -0.740 but single points swing by +-1.9).
const PREFIX_DRIFT: f64 = 4.0;

/// How many contour moments the pole probe extracts.
pub const PROBE_DEPTH: usize = 4;

fn cpow_neg(base: f64, s: Complex64) -> Complex64 {
    (-s * libm::log(base)).exp()
}

/// Rounding allowance per unit of accumulated magnitude for sums whose
/// phases come from the double-double log table.
fn table_noise(t_abs: f64) -> f64 {
    f64::EPSILON * (10.0 + 0.08 * t_abs)
}

fn require_sigma_above(s: Complex64, min: f64) -> Result<()> {
    if s.re <= min {
        return Err(Error::Convergence(format!(
            "series diverges at re(s) = {} (needs re(s) > {min})",
            s.re
        )));
    }
    Ok(())
}

fn clamp_terms(n: u64) -> u32 {
    u32::try_from(n).unwrap_or(u32::MAX)
}

/// Inner Newton series sum over k >= 2 of (-1)^k C(s+k-1, k) n^{-k},
/// equal to (1 + 1/n)^{-s} - 1 + s/n. The recurrence branch is used when
/// its term ratio is provably below 0.19 so a handful of sqrt-free steps
/// converge; otherwise the closed form, built from the quotient of the
/// adjacent table powers `next`/`cur` so the phase cancellation stays at
/// the table-noise scale even at height.
fn inner_sum(
    s: Complex64,
    nf: f64,
    k_cap: u32,
    cur: Complex64,
    next: Complex64,
    noise: f64,
) -> (Complex64, f64) {
    let s_norm = s.norm();
    if nf < 16.0 || s_norm > 0.25 * nf {
        let v = next / cur - 1.0 + s / nf;
        let err = f64::EPSILON * 8.0 * (1.0 + s_norm / nf + v.norm()) + 2.0 * noise;
        return (v, err);
    }
    // |s + k| <= |s| + k keeps the ratio estimates sqrt-free; with
    // |s| <= n/4 and n >= 16 they never exceed 0.19.
    let inv = 1.0 / nf;
    let done = 0.0025 * f64::EPSILON * f64::EPSILON;
    let mut t = -s * inv;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut k = 1u32;
    while k < k_cap {
        k += 1;
        t *= (s + f64::from(k - 1)) * (-inv / f64::from(k));
        acc += t;
        let q = (s_norm + f64::from(k)) * inv / f64::from(k + 1);
        let g = q / (1.0 - q);
        let rem2 = t.norm_sqr() * g * g;
        if rem2 <= done * acc.norm_sqr() {
            return (acc, libm::sqrt(rem2) + 64.0 * f64::EPSILON * acc.norm());
        }
    }
    let q = (s_norm + f64::from(k_cap)) * inv / f64::from(k_cap + 1);
    let g = q / libm::fmax(1.0 - q, 0.3);
    (acc, t.norm() * g + 64.0 * f64::EPSILON * acc.norm())
}

/// Binomial coefficients (-1)^k C(s+k-1, k) for k = 2..=6.
fn moment_coeffs(s: Complex64) -> [Complex64; 5] {
    let c2 = s * (s + 1.0) / 2.0;
    let c3 = -c2 * (s + 2.0) / 3.0;
    let c4 = -c3 * (s + 3.0) / 4.0;
    let c5 = -c4 * (s + 4.0) / 5.0;
    let c6 = -c5 * (s + 5.0) / 6.0;
    [c2, c3, c4, c5, c6]
}

/// Outer-tail leftover when moments k <= depth are pulled: the k = depth+1
/// term dominates geometrically (ratio under 0.3 once m >= |s|), so twice
/// its integral bound covers the rest.
fn closure_leftover(cs: &[Complex64; 5], depth: usize, sigma: f64, mf: f64) -> f64 {
    let exponent = sigma + depth as f64 - 1.0;
    2.0 * cs[depth - 1].norm() * libm::pow(mf, -exponent) / exponent
}

/// A priori model of the closed-moment ratio error at height t: the zeta
/// pair carries its tolerance floor plus table-phase rounding over an
/// accumulated magnitude of order ten.
fn zr_error_model(t_abs: f64) -> f64 {
    3.0 * (1.0e-13 + table_noise(t_abs) * 12.0)
}

fn summatory_model(table: &TotientTable, n0: u64) -> (f64, f64) {
    let a = table.summatory(n0) as f64;
    let nf = n0 as f64;
    let eps = (a - nf * nf / (2.0 * ZETA2)) / nf;
    (a, eps)
}

/// G(s) = 1 + sum_{n>=1} phi(n) (n+1)^{-s} for re(s) > 2, with the tail
/// past `n_terms` summed in closed form against the calibrated model.
pub fn g_phi(s: ComplexValue, n_terms: u64, table: &TotientTable) -> Result<EvalResult> {
    let s: Complex64 = s.into();
    require_sigma_above(s, 2.0)?;
    if n_terms < 16 {
        return Err(Error::Domain(format!("n_terms = {n_terms} below minimum 16")));
    }
    if n_terms > table.limit() {
        return Err(Error::Bound(format!(
            "n_terms = {n_terms} exceeds the table limit {}",
            table.limit()
        )));
    }
    let n0 = n_terms;
    let mut value = Compensated::new(Complex64::new(1.0, 0.0));
    let mut abs_sum = 1.0f64;
    for n in 1..=n0 {
        let term = table.phi(n) as f64 * cpow_neg(n as f64 + 1.0, s);
        value.add(term);
        abs_sum += term.norm();
    }

    // Abel tail: g(u) = (u+1)^{-s}, model A(u) = u^2/(2 zeta(2)) + eps u.
    let (a_n0, eps_n0) = summatory_model(table, n0);
    let nf = n0 as f64;
    let b = nf + 1.0; // integration boundary after the shift u -> u+1
    let p = cpow_neg(b, s); // (N+1)^{-s}
    let i2 = p * b * b / (s - 2.0) - 2.0 * p * b / (s - 1.0) + p / s;
    let i1 = p * b / (s - 1.0) - p / s;
    let tail = -a_n0 * p + s * (i2 / (2.0 * ZETA2) + eps_n0 * i1);
    value.add(tail);
    abs_sum += tail.norm();

    let sigma = s.re;
    // Each term carries a relative error near |s| ln(n+1) eps from the
    // power evaluation; the compensated sum itself contributes O(eps).
    let rounding = (4.0 + s.norm() * libm::log(b)) * f64::EPSILON * abs_sum;
    let err = DRIFT * libm::pow(nf, 1.0 - sigma) * (1.0 + s.norm() / (sigma - 1.0)) + rounding;
    Ok(EvalResult::new(value.sum, err, clamp_terms(n0)))
}

/// D(s) for re(s) > 2 from the coefficient table directly, with the tail
/// past the table limit accelerated against the calibrated partial-sum
/// model T(u) ~ u ln u / zeta(2) + c1 u.
pub fn dphi_direct(s: ComplexValue, coeffs: &PhiCoeff) -> Result<EvalResult> {
    let s: Complex64 = s.into();
    require_sigma_above(s, 2.0)?;
    let n0 = coeffs.limit();
    if n0 < 64 {
        return Err(Error::Bound(format!(
            "coefficient table limit {n0} is below the minimum 64"
        )));
    }
    let mut value = Compensated::new(Complex64::new(0.0, 0.0));
    let mut abs_sum = 0.0f64;
    for n in 2..=n0 {
        let c = coeffs.coeff(n);
        if c == 0 {
            continue;
        }
        let term = c as f64 * cpow_neg(n as f64, s);
        value.add(term);
        abs_sum += term.norm();
    }

    let nf = n0 as f64;
    let t_n0 = coeffs.prefix(n0) as f64;
    let ln_n = libm::log(nf);
    let c1 = (t_n0 - nf * ln_n / ZETA2) / nf;
    let sm1 = s - 1.0;
    let tail = -t_n0 * cpow_neg(nf, s)
        + s * cpow_neg(nf, sm1) * ((ln_n / sm1 + 1.0 / (sm1 * sm1)) / ZETA2 + c1 / sm1);
    value.add(tail);
    abs_sum += tail.norm();

    let sigma = s.re;
    let rounding = (4.0 + s.norm() * ln_n) * f64::EPSILON * abs_sum;
    let err =
        PREFIX_DRIFT * libm::pow(nf, 1.0 - sigma) * (1.0 + s.norm() / (sigma - 1.0)) + rounding;
    Ok(EvalResult::new(value.sum, err, clamp_terms(n0)))
}

/// D(s) for re(s) > 2 through the convolution identity
/// D(s) = zeta(s-1) - zeta(s) G(s).
pub fn dphi_convolution(s: ComplexValue, n_terms: u64, table: &TotientTable) -> Result<EvalResult> {
    let sc: Complex64 = s.into();
    require_sigma_above(sc, 2.0)?;
    // zeta(s-1) grows like 1/(s-2) as s -> 2; scale the request with it.
    let tol_z = 1.0e-13 * libm::fmax(1.0, 1.0 / (sc - 2.0).norm());
    let zm = zeta::em_eval(sc - 1.0, tol_z, false)?;
    let z = zeta::em_eval(sc, 1.0e-13, false)?;
    let g = g_phi(s, n_terms, table)?;
    let value = zm.value - z.value * g.value;
    let err = zm.err_bound
        + g.value.norm() * z.err_bound
        + z.value.norm() * g.err_bound
        + 4.0 * f64::EPSILON * value.norm();
    Ok(EvalResult::new(value, err, g.terms_used))
}

/// Cutoff that brings the binomial-representation tail bounds under
/// `w_tol` at the inner-series level, choosing the pull depth the same
/// way the evaluator does: each closed moment k contributes |c_k| times
/// the ratio noise, so deeper pulls trade leftover decay against noise
/// amplification; the cheapest admissible depth sets the cutoff.
pub fn binomial_outer_for(s: ComplexValue, w_tol: f64) -> u64 {
    let s: Complex64 = s.into();
    let sigma = libm::fmax(s.re, 1.0e-3);
    let tau = libm::fmax(w_tol, 1.0e-14);
    let cs = moment_coeffs(s);
    let ezr = zr_error_model(libm::fabs(s.im));
    let floor = libm::fmax(64.0, s.norm());
    let mut best = f64::INFINITY;
    let mut noise = 0.0f64;
    for depth in 2..=5usize {
        noise += cs[depth - 2].norm() * ezr;
        if noise > tau * 0.5 {
            break;
        }
        let exponent = sigma + depth as f64 - 1.0;
        let m_d = libm::pow(
            4.0 * cs[depth - 1].norm() / (exponent * tau),
            1.0 / exponent,
        );
        best = libm::fmin(best, libm::fmax(m_d, floor));
    }
    if !best.is_finite() {
        // Even the shallowest pull exceeds the noise half-budget; size for
        // it anyway and let the evaluation report the honest bound.
        let exponent = sigma + 1.0;
        best = libm::fmax(
            libm::pow(4.0 * cs[1].norm() / (exponent * tau), 1.0 / exponent),
            floor,
        );
    }
    (best + 1.0) as u64
}

/// D(s) on re(s) > 0, s != 1, through the binomial rearrangement
///
///   D(s) = s zeta(s)^2 / zeta(s+1) - zeta(s)(s + 2^{-s}) - zeta(s) W(s),
///   W(s) = sum_{n>=2} phi(n) n^{-s} [(1+1/n)^{-s} - 1 + s/n].
///
/// The outer tail past `n_outer` is reduced to closed moments through
/// sum phi(n) n^{-w} = zeta(w-1)/zeta(w) (re(w) > 2 holds for every
/// pulled moment once re(s) > 0). The pull depth k <= 5 is chosen after
/// the pass to minimize the closure noise |c_k| e_zr plus the deeper-k
/// leftover; at height the coefficients |c_k| ~ |s|^k/k! amplify every
/// zeta error, so shallow pulls with longer heads win. Errors above
/// `tol` are refused.
pub fn dphi_binomial(
    s: ComplexValue,
    n_outer: u64,
    k_inner: u32,
    tol: f64,
    table: &TotientTable,
) -> Result<EvalResult> {
    dphi_binomial_with(s, n_outer, k_inner, tol, table, &mut PowTable::new())
}

/// `dphi_binomial` with a caller-held power table. The double-double
/// logarithms are height-independent and the magnitudes are keyed to
/// re(s), so evaluations along a fixed-abscissa line share nearly all
/// of the table work.
pub fn dphi_binomial_with(
    s: ComplexValue,
    n_outer: u64,
    k_inner: u32,
    tol: f64,
    table: &TotientTable,
    pows: &mut PowTable,
) -> Result<EvalResult> {
    let s: Complex64 = s.into();
    require_sigma_above(s, 0.0)?;
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole(format!("D has a double pole at s = 1")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    if k_inner < 8 {
        return Err(Error::Domain(format!("k_inner = {k_inner} below minimum 8")));
    }
    let m = n_outer;
    if (m as f64) < libm::fmax(64.0, s.norm()) {
        return Err(Error::Bound(format!(
            "n_outer = {m} too small for |s| = {}",
            s.norm()
        )));
    }
    if m > table.limit() {
        return Err(Error::Bound(format!(
            "n_outer = {m} exceeds the table limit {}",
            table.limit()
        )));
    }

    let sigma = s.re;
    let t_im = s.im;
    let noise = table_noise(libm::fabs(t_im));
    let mf = m as f64;
    pows.ensure(sigma, (m + 1) as usize);

    // One fused pass, run downward: the reduced phase e^{-i t ln n} is
    // shared by the W term, the six zeta heads zeta(s)..zeta(s+5), and
    // the moment heads phi(n) n^{-s-k}, and each node hands its power to
    // the n-1 node so the inner closed form is a single quotient.
    let mut w = Compensated::new(Complex64::new(0.0, 0.0));
    let mut w_abs = 0.0f64;
    let mut inner_err = 0.0f64;
    let mut zh: [Compensated; 6] =
        core::array::from_fn(|_| Compensated::new(Complex64::new(1.0, 0.0)));
    let mut zh_abs = [1.0f64; 6];
    let mut mh: [Compensated; 4] =
        core::array::from_fn(|_| Compensated::new(Complex64::new(0.0, 0.0)));
    let mut mh_abs = [0.0f64; 4];
    let top = (m + 1) as usize;
    let mut next = pows.mag(top) * cis_neg(t_im, pows.log_hi(top), pows.log_lo(top));
    for n in (2..=m).rev() {
        let nu = n as usize;
        let nf = n as f64;
        let phi = table.phi(n) as f64;
        let mag = pows.mag(nu);
        let npow = mag * cis_neg(t_im, pows.log_hi(nu), pows.log_lo(nu));
        let (inner, ierr) = inner_sum(s, nf, k_inner, npow, next, noise);
        next = npow;
        let term = phi * npow * inner;
        w.add(term);
        w_abs += term.norm();
        inner_err += phi * mag * ierr;
        let inv = 1.0 / nf;
        let mut zterm = npow;
        let mut zmag = mag;
        zh[0].add(zterm);
        zh_abs[0] += zmag;
        for j in 1..6 {
            zterm *= inv;
            zmag *= inv;
            zh[j].add(zterm);
            zh_abs[j] += zmag;
            if j >= 2 {
                mh[j - 2].add(phi * zterm);
                mh_abs[j - 2] += phi * zmag;
            }
        }
    }

    // Euler-Maclaurin corrections finish each zeta head at the shared
    // cutoff. Tolerance requests sit above each head's own phase floor.
    let cutoff = mf + 1.0;
    let mut zf = [EvalResult::new(Complex64::new(0.0, 0.0), 0.0, 0); 6];
    for (j, slot) in zf.iter_mut().enumerate() {
        let base = if j == 0 {
            1.0e-13 * libm::fmax(1.0, 1.0 / (s - 1.0).norm())
        } else {
            1.0e-13
        };
        let tol_j = libm::fmax(base, 2.0 * noise * zh_abs[j]);
        let pass = zeta::em_finish(
            s + j as f64,
            cutoff,
            zh[j].sum,
            zh_abs[j],
            tol_j,
            false,
            0.08,
        );
        if !pass.converged {
            return Err(Error::TailTolerance(format!(
                "zeta(s+{j}) corrections stall at cutoff {cutoff}; raise n_outer"
            )));
        }
        *slot = EvalResult::new(pass.value, pass.err_bound, pass.terms);
    }
    let z_s = zf[0];
    let z_s1 = zf[1];

    // Closed-moment tails and their per-depth noise.
    let cs = moment_coeffs(s);
    let mut tails = [Complex64::new(0.0, 0.0); 4];
    let mut noise_k = [0.0f64; 4];
    for k in 2..=5usize {
        let num = zf[k - 1];
        let den = zf[k];
        let zr = num.value / den.value;
        tails[k - 2] = zr - 1.0 - mh[k - 2].sum;
        let e_zr = (num.err_bound + zr.norm() * den.err_bound) / den.value.norm();
        // The subtraction cancels O(1) operands down to the tail scale,
        // so the head's accumulated magnitude is charged in full.
        noise_k[k - 2] =
            cs[k - 2].norm() * (e_zr + noise * (zr.norm() + 1.0 + mh_abs[k - 2]));
    }
    let mut best_depth = 2usize;
    let mut best_total = f64::INFINITY;
    let mut acc = 0.0f64;
    for depth in 2..=5usize {
        acc += noise_k[depth - 2];
        let total = acc + closure_leftover(&cs, depth, sigma, mf);
        if total < best_total {
            best_total = total;
            best_depth = depth;
        }
    }
    let mut moment_err = 0.0f64;
    for k in 2..=best_depth {
        w.add(cs[k - 2] * tails[k - 2]);
        moment_err += noise_k[k - 2];
    }
    let w = w.sum;
    let w_err = moment_err
        + closure_leftover(&cs, best_depth, sigma, mf)
        + inner_err
        + noise * w_abs;

    let two_pow = pows.mag(2) * cis_neg(t_im, pows.log_hi(2), pows.log_lo(2));
    let value = s * z_s.value * z_s.value / z_s1.value
        - z_s.value * (s + two_pow)
        - z_s.value * w;
    let dz_s = (2.0 * s * z_s.value / z_s1.value).norm() + (s + two_pow).norm() + w.norm();
    let dz_s1 = (s * z_s.value * z_s.value / (z_s1.value * z_s1.value)).norm();
    let err = dz_s * z_s.err_bound
        + dz_s1 * z_s1.err_bound
        + z_s.value.norm() * w_err
        + 16.0 * f64::EPSILON * (value.norm() + (s * z_s.value).norm());
    if err > tol {
        return Err(Error::TailTolerance(format!(
            "binomial bound {err} misses tolerance {tol} at n_outer = {m}; raise n_outer"
        )));
    }
    Ok(EvalResult::new(value, err, clamp_terms(m)))
}

/// Which representation evaluates D(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DphiRepresentation {
    /// Coefficient series, re(s) > 2.
    Direct,
    /// zeta(s-1) - zeta(s) G(s), re(s) > 2.
    Convolution,
    /// Binomial rearrangement, re(s) > 0.
    Binomial,
}

/// Tuning knobs for the representation dispatch.
#[derive(Debug, Clone, Copy)]
pub struct DphiParams {
    /// Head length for Convolution and Binomial (Direct uses its table).
    pub n_terms: u64,
    /// Inner Newton-series depth for Binomial.
    pub k_inner: u32,
    /// Error budget enforced by Binomial.
    pub tol: f64,
}

impl Default for DphiParams {
    fn default() -> Self {
        DphiParams {
            n_terms: 50_000,
            k_inner: 64,
            tol: 1.0e-6,
        }
    }
}

/// Evaluates D(s) through the chosen representation.
pub fn dphi(
    s: ComplexValue,
    rep: DphiRepresentation,
    params: &DphiParams,
    table: &TotientTable,
    coeffs: &PhiCoeff,
) -> Result<EvalResult> {
    match rep {
        DphiRepresentation::Direct => dphi_direct(s, coeffs),
        DphiRepresentation::Convolution => dphi_convolution(s, params.n_terms, table),
        DphiRepresentation::Binomial => {
            dphi_binomial(s, params.n_terms, params.k_inner, params.tol, table)
        }
    }
}

/// The residue of D at its double pole s = 1,
///
///   (zeta(2) - zeta'(2)) / zeta(2)^2 - 1 - sum_n phi(n) / (n^2 (n+1)),
///
/// with the series tail in closed form against the calibrated model.
pub fn residue_constant(tol: f64, table: &TotientTable) -> Result<EvalResult> {
    if !(1.0e-12..=1.0).contains(&tol) {
        return Err(Error::Domain(format!(
            "tolerance {tol} outside the supported range [1e-12, 1]"
        )));
    }
    // Tail residual is 1.5 * DRIFT / N^2; pick N for half the budget.
    let n0 = libm::fmax(64.0, libm::sqrt(3.0 * DRIFT / tol)) as u64 + 1;
    if n0 > table.limit() {
        return Err(Error::TailTolerance(format!(
            "tolerance {tol} needs {n0} terms but the table stops at {}",
            table.limit()
        )));
    }
    let mut series = Compensated::new(Complex64::new(0.0, 0.0));
    for n in 1..=n0 {
        let nf = n as f64;
        series.add(Complex64::new(
            table.phi(n) as f64 / (nf * nf * (nf + 1.0)),
            0.0,
        ));
    }
    let (_, eps_n0) = summatory_model(table, n0);
    let nf = n0 as f64;
    let l = libm::log1p(1.0 / nf);
    series.add(Complex64::new(l / ZETA2 + eps_n0 * (1.0 / nf - l), 0.0));
    let series = series.sum.re;

    let zp = zeta::em_eval(Complex64::new(2.0, 0.0), 1.0e-13, true)?;
    let value = (ZETA2 - zp.value.re) / (ZETA2 * ZETA2) - 1.0 - series;
    let err = 1.5 * DRIFT / (nf * nf)
        + zp.err_bound / (ZETA2 * ZETA2)
        + 32.0 * f64::EPSILON;
    Ok(EvalResult::new(
        Complex64::new(value, 0.0),
        err,
        clamp_terms(n0),
    ))
}

/// Contour evidence about a candidate pole of D.
#[derive(Debug, Clone)]
pub struct PoleProbe {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: u32,
    /// moments[m] estimates the coefficient of (s - center)^{-m-1}.
    pub moments: Vec<Complex64>,
    /// Scale below which a moment is indistinguishable from noise.
    pub noise_floor: f64,
    /// 0 when every moment sits under the noise floor.
    pub order_estimate: u32,
    pub residue_estimate: Complex64,
}

/// Estimates the pole order and residue of D at `center` from trapezoid
/// contour moments on the circle of the given radius. The trapezoid rule
/// is spectrally accurate on the periodic integrand, so eval noise sets
/// the detection floor.
pub fn pole_probe(
    center: ComplexValue,
    radius: f64,
    nodes: u32,
    table: &TotientTable,
) -> Result<PoleProbe> {
    let c: Complex64 = center.into();
    if !(radius > 0.0 && radius <= 0.5) {
        return Err(Error::Domain(format!(
            "radius {radius} outside the supported range (0, 0.5]"
        )));
    }
    if !(32..=4096).contains(&nodes) {
        return Err(Error::Domain(format!("nodes = {nodes} outside [32, 4096]")));
    }
    if c.re - radius <= 0.0 {
        return Err(Error::Domain(format!(
            "circle at {c} with radius {radius} leaves the half-plane re(s) > 0"
        )));
    }
    let pole_gap = ((c - 1.0).norm() - radius) as f64;
    if libm::fabs(pole_gap) < 1.0e-3 {
        return Err(Error::Domain(format!(
            "circle at {c} with radius {radius} passes through s = 1"
        )));
    }

    let two_pi = 2.0 * core::f64::consts::PI;
    let mut values = Vec::with_capacity(nodes as usize);
    for j in 0..nodes {
        let theta = two_pi * f64::from(j) / f64::from(nodes);
        let s = c + radius * Complex64::new(libm::cos(theta), libm::sin(theta));
        let gap = (s - 1.0).norm();
        // |D| on the circle scales like 1/gap^2; so does the permissible
        // absolute noise per node.
        let tol_node = 2.5e-7 * (1.0 + 1.0 / (gap * gap));
        let sv = ComplexValue::new(s.re, s.im)?;
        let mut m = binomial_outer_for(sv, tol_node / (1.5 + 1.0 / gap)).min(table.limit());
        let mut eval = None;
        for _ in 0..3 {
            match dphi_binomial(sv, m, 64, tol_node, table) {
                Ok(v) => {
                    eval = Some(v);
                    break;
                }
                Err(Error::TailTolerance(_)) if m < table.limit() => {
                    m = (m * 2).min(table.limit());
                }
                Err(e) => return Err(e),
            }
        }
        let eval = eval.ok_or_else(|| {
            Error::TailTolerance(format!(
                "node tolerance {tol_node} unreachable within the table limit"
            ))
        })?;
        values.push((theta, eval.value));
    }

    let fmax = values.iter().fold(0.0f64, |a, (_, v)| libm::fmax(a, v.norm()));
    let noise_floor = 1.0e-6 * fmax;
    let mut moments = Vec::with_capacity(PROBE_DEPTH);
    let mut order = 0u32;
    for m_idx in 0..PROBE_DEPTH {
        let mut acc = Complex64::new(0.0, 0.0);
        for (theta, v) in &values {
            let phase = (m_idx as f64 + 1.0) * theta;
            acc += v * Complex64::new(libm::cos(phase), libm::sin(phase));
        }
        let c_m = acc * libm::pow(radius, m_idx as f64 + 1.0) / f64::from(nodes);
        if c_m.norm() > noise_floor * libm::pow(radius, m_idx as f64 + 1.0) {
            order = m_idx as u32 + 1;
        }
        moments.push(c_m);
    }
    let residue_estimate = moments[0];
    Ok(PoleProbe {
        center: c,
        radius,
        nodes,
        moments,
        noise_floor,
        order_estimate: order,
        residue_estimate,
    })
}
