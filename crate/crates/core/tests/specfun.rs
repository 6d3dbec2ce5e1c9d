use altbc::specfun::{zeta3, ZETA3};
use altbc::*;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Neumann-compensated sum of the ascending series.
fn series_oracle(n: u32, t: f64, terms: usize) -> f64 {
    let half = 0.5 * t;
    let mut term = half.powi(n as i32);
    for j in 1..=n {
        term /= j as f64;
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for m in 0..terms {
        let s = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - s) + term } else { (term - s) + sum };
        sum = s;
        let m = m as f64;
        term *= -half * half / ((m + 1.0) * (m + 1.0 + n as f64));
    }
    sum + comp
}

/// Bessel's integral by the trapezoidal rule, exact to rounding for a
/// periodic integrand once the node count exceeds n + t by a margin.
fn integral_oracle(n: u32, t: f64) -> f64 {
    let m = 400;
    let h = PI / m as f64;
    let mut s = 0.5 * (1.0 + (n as f64 * PI).cos());
    for j in 1..m {
        let tau = j as f64 * h;
        s += (n as f64 * tau - t * tau.sin()).cos();
    }
    s * h / PI
}

fn zero(n: u32, k: u32, kind: ZeroKind) -> f64 {
    bessel_zero(ZeroIndex { n, k, kind }).unwrap()
}

#[test]
fn origin_values() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    assert_eq!(bessel_j_prime(0, 0.0).unwrap(), 0.0);
}

#[test]
fn appendix_cross_wronskian() {
    let f = |t: f64| {
        let (j6, j3) = (bessel_j(6, t).unwrap(), bessel_j(3, t).unwrap());
        let (d6, d3) = (bessel_j_prime(6, t).unwrap(), bessel_j_prime(3, t).unwrap());
        t * (d6 * j3 - d3 * j6)
    };
    // magnitudes only; the orientation is fixed by limiting::F_nm
    assert!((f(8.0).abs() - 0.1673037488).abs() < 1e-8);
    assert!((f(9.0).abs() - 0.0658220035).abs() < 1e-8);
    assert!(f(8.0) * f(9.0) < 0.0);
}

#[test]
fn appendix_zeros() {
    assert!((zero(3, 1, ZeroKind::OfJ) - 6.380161896).abs() < 1e-7);
    assert!((zero(3, 2, ZeroKind::OfJ) - 9.761023130).abs() < 1e-7);
    assert!((zero(6, 1, ZeroKind::OfJ) - 9.936109524).abs() < 1e-7);
    let z = zero(6, 1, ZeroKind::OfJPrime);
    assert!((z - 7.501266145).abs() < 1e-7);
    assert!(bessel_j_prime(6, 7.501266145).unwrap().abs() < 1e-9);
}

#[test]
fn derivative_against_series() {
    // J_1'(1) = J_0(1) - J_1(1)
    let want = series_oracle(0, 1.0, 40) - series_oracle(1, 1.0, 40);
    let got = bessel_j_prime(1, 1.0).unwrap();
    assert!((got - want).abs() < 1e-15, "{got} vs {want}");
}

#[test]
fn values_against_series_oracle() {
    for n in [0u32, 1, 2, 5, 10, 20] {
        for t in [0.1, 0.5, 1.0, 2.5, 5.0, 8.0] {
            let want = series_oracle(n, t, 60);
            let got = bessel_j(n, t).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.abs() + 1e-300, "n={n} t={t}");
        }
    }
}

#[test]
fn values_against_integral_oracle() {
    for n in 0..=12u32 {
        let mut t = 0.25;
        while t <= 30.0 {
            let want = integral_oracle(n, t);
            let got = bessel_j(n, t).unwrap();
            // the trapezoidal sum carries ~1e-16 absolute rounding
            let tol = if want.abs() > 1e-3 { 1e-12 * want.abs() } else { 2e-15 };
            assert!((got - want).abs() <= tol, "n={n} t={t}: {got} vs {want}");
            t += 0.37;
        }
    }
}

#[test]
fn beyond_thirty_absolute_accuracy() {
    for n in [0u32, 1, 4] {
        for t in [31.0, 60.0, 95.0] {
            let want = integral_oracle(n, t);
            assert!((bessel_j(n, t).unwrap() - want).abs() < 1e-10, "n={n} t={t}");
        }
    }
}

#[test]
fn domain_errors() {
    assert!(matches!(bessel_j(0, -1.0), Err(Error::Domain(_))));
    assert!(matches!(bessel_j_prime(2, 2.0e4), Err(Error::Domain(_))));
    assert!(bessel_j(0, f64::NAN).is_err());
}

#[test]
fn zeta3_against_series() {
    let mut s = 0.0;
    // summing small-to-large, the tail beyond k is below 1/(2k^2)
    for k in (1..=20_000_000u64).rev() {
        let k = k as f64;
        s += 1.0 / (k * k * k);
    }
    s += 0.5 / (2.0e7f64 * 2.0e7);
    assert!((zeta3() - s).abs() < 1e-15);
    assert!((ZETA3 - 1.2020569031595943).abs() < 1e-15);
    assert!((ZETA3 / 4.0 - 0.30051422578989857).abs() < 1e-15);
    assert!((PI.powi(4) / 360.0 - 0.27058080842778454).abs() < 1e-15);
}

#[test]
fn zeros_vanish_and_change_sign() {
    for n in 0..6u32 {
        for k in 1..=20u32 {
            let z = zero(n, k, ZeroKind::OfJ);
            assert!(bessel_j(n, z).unwrap().abs() <= 1e-9);
            let (a, b) = (bessel_j(n, z - 1e-6).unwrap(), bessel_j(n, z + 1e-6).unwrap());
            assert!(a * b < 0.0, "n={n} k={k}");
            let zp = zero(n, k, ZeroKind::OfJPrime);
            let (a, b) = (bessel_j_prime(n, zp - 1e-6).unwrap(), bessel_j_prime(n, zp + 1e-6).unwrap());
            assert!(a * b < 0.0, "n={n} k={k} prime");
        }
    }
}

#[test]
fn zero_index_round_trips() {
    let idx = ZeroIndex { n: 3, k: 2, kind: ZeroKind::OfJPrime };
    let s = serde_json::to_string(&idx).unwrap();
    assert_eq!(serde_json::from_str::<ZeroIndex>(&s).unwrap(), idx);
}

#[test]
fn positive_on_initial_interval() {
    // J_n and J_n' stay positive on (0, n]
    for n in 1..=15u32 {
        for j in 1..=50 {
            let t = n as f64 * j as f64 / 50.0;
            assert!(bessel_j(n, t).unwrap() > 0.0);
            assert!(bessel_j_prime(n, t).unwrap() > 0.0, "n={n} t={t}");
        }
    }
}

proptest! {
    #[test]
    fn derivative_identity(n in 1u32..=30, t in 0.5f64..30.0) {
        let d = bessel_j_prime(n, t).unwrap();
        let r = 0.5 * (bessel_j(n - 1, t).unwrap() - bessel_j(n + 1, t).unwrap());
        prop_assert!((d - r).abs() <= 1e-13);
    }

    #[test]
    fn derivative_of_order_zero(t in 0.0f64..30.0) {
        prop_assert!((bessel_j_prime(0, t).unwrap() + bessel_j(1, t).unwrap()).abs() <= 1e-13);
    }

    #[test]
    fn three_term_recurrence(n in 1u32..=20, t in 0.5f64..30.0) {
        let jn = bessel_j(n, t).unwrap();
        let lhs = bessel_j(n + 1, t).unwrap() - 2.0 * n as f64 / t * jn + bessel_j(n - 1, t).unwrap();
        prop_assert!(lhs.abs() <= 1e-12 * (jn.abs() * 2.0 * n as f64 / t).max(1.0));
    }

    #[test]
    fn zeros_interlace(n in 0u32..=15, k in 1u32..=30) {
        let a = zero(n, k, ZeroKind::OfJ);
        let b = zero(n + 1, k, ZeroKind::OfJ);
        let c = zero(n, k + 1, ZeroKind::OfJ);
        prop_assert!(a < b && b < c);
    }

    #[test]
    fn zeros_increase(n in 0u32..=20, k in 1u32..=99) {
        for kind in [ZeroKind::OfJ, ZeroKind::OfJPrime] {
            prop_assert!(zero(n, k, kind) < zero(n, k + 1, kind));
        }
    }
}
