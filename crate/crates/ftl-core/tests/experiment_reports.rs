//! Scale checks for the verification reports: boundedness and trend of
//! the normalized main-term error, tightening of the averaged ratio, the
//! uniform band at height, power-like growth of the lower-envelope scan,
//! the short-interval increment at its hypothesis-driven width, partial
//! sums against the zeta engine, and bitwise determinism.
//!
//! Expected constants come from an independent integer brute-force pass
//! (sieve + direct summation) and are frozen here.

use ftl_core::arith::{phi_coeffs, PhiCoeff, TotientOracle, TotientTable};
use ftl_core::experiments::{
    conjecture_ratio, halving_identity, local_increment, ratio_band, riesz_weighted,
    scan_phi_lower, totient_series_check, verify_main_term,
};
use ftl_core::rational::{from_u64, parse_decimal, Rational};
use ftl_core::report::ReportRow;
use ftl_core::value::ComplexValue;
use ftl_core::Error;

const LIMIT: u64 = 100_000;

fn fixture() -> (TotientOracle, PhiCoeff) {
    let oracle = TotientOracle::new(TotientTable::build(LIMIT).unwrap());
    let coeffs = phi_coeffs(LIMIT, oracle.table()).unwrap();
    (oracle, coeffs)
}

fn decades() -> Vec<Rational> {
    vec![from_u64(1_000), from_u64(10_000), from_u64(100_000)]
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Least-squares slope of `ys` against `ln x` over decade points.
fn slope_vs_log(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(ys).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}

#[test]
fn main_term_error_bounded_and_trendless() {
    let (_, coeffs) = fixture();
    let rows = verify_main_term(&decades(), &coeffs).unwrap();
    let expect = [
        -0.021932823534231632,
        -0.02194927471230924,
        -0.0220295047903862,
    ];
    for (row, e) in rows.iter().zip(expect) {
        assert!(close(row.normalized_error, e, 1.0e-9), "at x = {}", row.x);
    }
    let cap = 2.0 * rows[0].normalized_error.abs();
    assert!(rows.iter().all(|r| r.normalized_error.abs() <= cap));
    let xs: Vec<f64> = rows.iter().map(|r| r.x).collect();
    let ns: Vec<f64> = rows.iter().map(|r| r.normalized_error).collect();
    assert!(slope_vs_log(&xs, &ns).abs() < 0.05);
}

#[test]
fn averaged_ratio_tightens_with_x() {
    let (oracle, coeffs) = fixture();
    let rows = conjecture_ratio(&decades(), &oracle, &coeffs).unwrap();
    assert!(close(rows[0].normalized_error, 0.989554335046176 - 1.0, 1.0e-9));
    assert!(close(rows[2].normalized_error, 0.9937049739415478 - 1.0, 1.0e-9));
    // The averaged ratio must approach 1 as x grows; the pointwise ratio
    // merely stays in the vicinity.
    assert!(rows[2].normalized_error.abs() < rows[0].normalized_error.abs());
    assert!(close(rows[0].ratio, 0.9651352000295872, 1.0e-9));
    assert!(close(rows[2].ratio, 0.9628905998826641, 1.0e-9));
}

#[test]
fn band_holds_across_decades() {
    let (oracle, _) = fixture();
    let rows = ratio_band(&decades(), &oracle).unwrap();
    let expect = [
        0.5463533449539121,
        0.4883486671124208,
        0.5423892188467239,
    ];
    for (row, e) in rows.iter().zip(expect) {
        assert!(close(row.normalized_error, e, 1.0e-9), "at x = {}", row.x);
        assert!(row.normalized_error > 0.0 && row.normalized_error < 1.0);
    }
}

#[test]
fn scan_constant_grows_power_like() {
    let (_, coeffs) = fixture();
    let at4 = scan_phi_lower(10_000, &coeffs).unwrap();
    assert_eq!(at4.extremal_n, 9_240);
    assert_eq!(at4.extremal_value, -22_385.0);
    assert!(close(at4.fitted_constant, 2451.4589325483853, 1.0e-8));
    assert!(at4.hypothesis_doubtful);

    let at5 = scan_phi_lower(100_000, &coeffs).unwrap();
    assert_eq!(at5.extremal_n, 98_280);
    assert!(close(at5.fitted_constant, 23500.25819272732, 1.0e-7));
    assert!(at5.hypothesis_doubtful);

    // Each decade multiplies the fitted constant roughly tenfold: the
    // scanned range rules out any modest uniform constant.
    assert!(at5.fitted_constant >= at4.fitted_constant);
    assert!(at5.fitted_constant / at4.fitted_constant > 5.0);
}

#[test]
fn increment_at_hypothesis_width() {
    let (oracle, _) = fixture();
    // h = x / sqrt(log x) at x = 1000, as a fixed decimal; this choice
    // makes h^2 log x equal x^2, so both normalizations agree.
    let x = from_u64(1_000);
    let h = parse_decimal("380.479733").unwrap();
    let inc = local_increment(&x, &h, &oracle).unwrap();
    assert_eq!(inc.increment, Rational::new(526_857_105_933, 1_000_000));
    assert!(close(inc.vs_h2_log_x, 0.5268571062144445, 1.0e-12));
    assert!(close(inc.vs_x_squared, 0.526857105933, 1.0e-12));
}

#[test]
fn series_check_bounded_without_trend() {
    let (oracle, _) = fixture();
    let xs = [from_u64(100), from_u64(1_000), from_u64(10_000)];
    let cases = [
        (3.0, [0.008026727587010707, 0.03302312578407188, 0.012280734394742775]),
        (2.5, [0.008160605855648807, 0.033025116106408195, 0.012282128571177543]),
    ];
    for (sigma, expect) in cases {
        let s = ComplexValue::real(sigma).unwrap();
        let rows = totient_series_check(s, &xs, oracle.table()).unwrap();
        for (row, e) in rows.iter().zip(expect) {
            assert!(close(row.normalized_error, e, 1.0e-4), "s = {sigma}, x = {}", row.x);
            assert!(row.normalized_error < 0.05);
        }
        let xf: Vec<f64> = rows.iter().map(|r| r.x).collect();
        let ns: Vec<f64> = rows.iter().map(|r| r.normalized_error).collect();
        assert!(slope_vs_log(&xf, &ns).abs() < 0.01);
    }
}

#[test]
fn halving_identity_stays_order_x() {
    let even = halving_identity(&from_u64(1_000_000)).unwrap();
    assert_eq!(even.normalized_error, 0.0);
    assert_eq!(even.ratio, 1.0);

    let odd = halving_identity(&from_u64(999_999)).unwrap();
    assert_eq!(odd.exact.as_f64(), 124_999_750_000.0);
    assert!(close(odd.normalized_error, -1.0 / 7_999_992.0, 1.0e-15));
    assert!(odd.normalized_error.abs() <= 1.0);
}

#[test]
fn riesz_gap_stays_order_x() {
    let (oracle, coeffs) = fixture();
    let expect_gap = [
        -0.9956271004939709,
        -0.9994475882947096,
        -0.9999332459789445,
    ];
    let expect_ratio = [
        0.9174729532065365,
        0.9378905640922907,
        0.9502795253979995,
    ];
    for ((x, gap), ratio) in decades().iter().zip(expect_gap).zip(expect_ratio) {
        let row = riesz_weighted(x, &coeffs, &oracle).unwrap();
        assert!(close(row.normalized_error, gap, 1.0e-9), "at x = {}", row.x);
        assert!(row.normalized_error.abs() <= 1.05);
        assert!(close(row.ratio, ratio, 1.0e-9), "at x = {}", row.x);
    }
}

#[test]
fn report_generators_are_bitwise_deterministic() {
    let (oracle, coeffs) = fixture();
    let xs = [from_u64(5_000), parse_decimal("1234.5").unwrap(), from_u64(97)];

    fn bits(rows: &[ReportRow]) -> Vec<u64> {
        rows.iter()
            .flat_map(|r| {
                [
                    r.x.to_bits(),
                    r.exact.as_f64().to_bits(),
                    r.predicted.to_bits(),
                    r.normalized_error.to_bits(),
                    r.ratio.to_bits(),
                ]
            })
            .collect()
    }

    let a = verify_main_term(&xs, &coeffs).unwrap();
    let b = verify_main_term(&xs, &coeffs).unwrap();
    assert_eq!(bits(&a), bits(&b));
    assert!(a.windows(2).all(|w| w[0].x < w[1].x));

    let a = conjecture_ratio(&xs, &oracle, &coeffs).unwrap();
    let b = conjecture_ratio(&xs, &oracle, &coeffs).unwrap();
    assert_eq!(bits(&a), bits(&b));

    let a = ratio_band(&xs, &oracle).unwrap();
    let b = ratio_band(&xs, &oracle).unwrap();
    assert_eq!(bits(&a), bits(&b));

    let s = ComplexValue::new(2.5, 1.5).unwrap();
    let a = totient_series_check(s, &xs, oracle.table()).unwrap();
    let b = totient_series_check(s, &xs, oracle.table()).unwrap();
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn capacity_surfaces_as_bound_errors() {
    let (oracle, coeffs) = fixture();
    let too_big = from_u64(LIMIT + 1);
    assert!(matches!(
        verify_main_term(&[too_big], &coeffs),
        Err(Error::Bound(_))
    ));
    assert!(matches!(
        riesz_weighted(&too_big, &coeffs, &oracle),
        Err(Error::Bound(_))
    ));
}
