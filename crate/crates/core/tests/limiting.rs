use altbc::limiting::{robin_residual, F_nm, MERGE_TOL};
use altbc::*;
use proptest::prelude::*;

fn f(n: u32, a: f64, t: f64) -> f64 {
    t * bessel_j_prime(n, t).unwrap() + a * bessel_j(n, t).unwrap()
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of f_{n,A} on a fine grid, refined by bisection.
fn dense_roots(n: u32, a: f64, tmax: f64) -> Vec<f64> {
    let h = 1e-3;
    let mut out = Vec::new();
    let mut t = h;
    let mut prev = f(n, a, t);
    while t + h <= tmax {
        let cur = f(n, a, t + h);
        if prev != 0.0 && prev.signum() != cur.signum() {
            out.push(bisect(|s| f(n, a, s), t, t + h));
        }
        prev = cur;
        t += h;
    }
    out
}

#[test]
fn neumann_spectrum_starts_with_constant_mode() {
    let r = robin_roots(0, 0.0, 2).unwrap();
    assert_eq!(r[0].t0, 0.0);
    assert_eq!(r[0].lambda0, 0.0);
    let j1 = bisect(|t| bessel_j(1, t).unwrap(), 3.0, 4.5);
    assert!((r[1].t0 - j1).abs() < 1e-10);

    let s = limiting_spectrum(0.0, 1.0).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].lambda0, 0.0);
    assert_eq!(s[0].contributors, vec![(0, 1)]);
    assert_eq!(s[0].multiplicity, 1);
}

#[test]
fn roots_match_dense_scan() {
    for n in 0..6u32 {
        for a in [0.0, 0.3, 1.0, 4.0] {
            let want = dense_roots(n, a, 25.0);
            let got: Vec<f64> = robin_roots(n, a, 12)
                .unwrap()
                .into_iter()
                .map(|r| r.t0)
                .filter(|&t| t > 0.0 && t < 25.0 - 1e-3)
                .collect();
            assert_eq!(got.len(), want.len(), "n={n} A={a}");
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-10, "n={n} A={a}: {g} vs {w}");
            }
        }
    }
}

#[test]
fn spectrum_at_unit_coupling() {
    let s = limiting_spectrum(1.0, 50.0).unwrap();
    let mut want: Vec<(f64, u32)> = Vec::new();
    for n in 0..8u32 {
        for t in dense_roots(n, 1.0, 50f64.sqrt()) {
            want.push((t * t, n));
        }
    }
    want.sort_by(|x, y| x.0.total_cmp(&y.0));
    assert_eq!(s.len(), want.len());
    for (e, (l, n)) in s.iter().zip(&want) {
        assert!((e.lambda0 - l).abs() < 1e-8);
        // no certificate exists at A = 1, so every entry has one order
        assert_eq!(e.contributors.len(), 1);
        assert_eq!(e.contributors[0].0, *n);
        assert_eq!(e.multiplicity, if *n == 0 { 1 } else { 2 });
    }
}

#[test]
fn appendix_sign_data() {
    assert!((F_nm(6, 3, 8.0).unwrap() + 0.1673037488).abs() < 1e-8);
    assert!((F_nm(6, 3, 9.0).unwrap() - 0.0658220035).abs() < 1e-8);
    assert!((F_nm(3, 6, 8.0).unwrap() - 0.1673037488).abs() < 1e-8);
    assert!(F_nm(3, 3, 8.0).is_err());
}

#[test]
fn degenerate_coupling_certificate() {
    let c = degenerate_a(6, 3, (8.0, 9.0)).unwrap();
    assert!(c.t0 > 8.0 && c.t0 < 9.0);
    assert!(c.a > 0.0);
    assert!(c.residual_n.abs() <= 1e-9 && c.residual_m.abs() <= 1e-9);
    assert!(F_nm(6, 3, c.bracket.0).unwrap() * F_nm(6, 3, c.bracket.1).unwrap() < 0.0);

    // independent oracle: bisection on the cross-Wronskian, then the ratio
    let cross = |t: f64| {
        t * (bessel_j_prime(6, t).unwrap() * bessel_j(3, t).unwrap()
            - bessel_j_prime(3, t).unwrap() * bessel_j(6, t).unwrap())
    };
    let t0 = bisect(cross, 8.0, 9.0);
    let a = -t0 * bessel_j_prime(6, t0).unwrap() / bessel_j(6, t0).unwrap();
    assert!((c.t0 - t0).abs() < 1e-12);
    assert!((c.a - a).abs() < 1e-10);

    let swapped = degenerate_a(3, 6, (8.0, 9.0)).unwrap();
    assert!((swapped.t0 - c.t0).abs() < 1e-13);
    assert!((swapped.a - c.a).abs() < 1e-10);
}

#[test]
fn degenerate_coupling_is_seen_by_the_spectrum() {
    let c = degenerate_a(6, 3, (8.0, 9.0)).unwrap();
    for n in [6u32, 3] {
        let roots = robin_roots(n, c.a, 5).unwrap();
        assert!(roots.iter().any(|r| (r.t0 - c.t0).abs() < 1e-8), "n={n}");
    }
    let s = limiting_spectrum(c.a, c.t0 * c.t0 + 1.0).unwrap();
    let e = s.iter().find(|e| (e.lambda0 - c.t0 * c.t0).abs() < 1e-6).unwrap();
    let orders: Vec<u32> = e.contributors.iter().map(|p| p.0).collect();
    assert!(orders.contains(&3) && orders.contains(&6));
    assert_eq!(e.multiplicity, 4);
}

#[test]
fn degenerate_coupling_errors() {
    assert!(matches!(degenerate_a(6, 3, (9.0, 9.5)), Err(Error::NoSignChange(..))));
    assert!(matches!(degenerate_a(6, 3, (6.0, 9.0)), Err(Error::ZeroInsideBracket { order: 3, .. })));
    // F_{0,3} vanishes near 3.544 where t J_0'/J_0 > 0
    assert!(matches!(degenerate_a(0, 3, (3.3, 3.8)), Err(Error::WrongSign(_))));
    assert!(degenerate_a(2, 2, (8.0, 9.0)).is_err());
}

#[test]
fn invalid_inputs() {
    assert!(robin_roots(0, -1.0, 1).is_err());
    assert!(robin_roots(0, 1.0, 0).is_err());
    assert!(robin_roots(0, 1.0, 51).is_err());
    assert!(limiting_spectrum(1.0, 3000.0).is_err());
    assert!(limiting_spectrum(-0.5, 10.0).is_err());
}

#[test]
fn records_round_trip_through_json() {
    let c = degenerate_a(6, 3, (8.0, 9.0)).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    let back: DegeneracyCertificate = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
    assert!(robin_residual(back.n, back.a, back.t0).abs() <= 1e-9);

    let spec = limiting_spectrum(1.0, 60.0).unwrap();
    let s = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<Vec<LimitingEigenvalue>>(&s).unwrap(), spec);
    let r = robin_roots(2, 0.7, 3).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<Vec<RobinRoot>>(&s).unwrap(), r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roots_are_certified(n in 0u32..=12, a in 0.0f64..10.0, count in 1usize..=8) {
        let roots = robin_roots(n, a, count).unwrap();
        prop_assert_eq!(roots.len(), count);
        for (i, r) in roots.iter().enumerate() {
            prop_assert_eq!(r.k as usize, i + 1);
            prop_assert!((r.lambda0 - r.t0 * r.t0).abs() <= 1e-15 * r.lambda0.max(1.0));
            if r.t0 == 0.0 {
                prop_assert!(n == 0 && a == 0.0 && i == 0);
                continue;
            }
            prop_assert!(r.residual().abs() <= 1e-10);
            prop_assert!(f(n, a, r.t0 - 1e-6) * f(n, a, r.t0 + 1e-6) < 0.0);
        }
        for w in roots.windows(2) {
            prop_assert!(w[0].t0 < w[1].t0);
        }
    }

    #[test]
    fn first_root_exceeds_order(n in 1u32..=20, a in 0.0f64..20.0) {
        let r = robin_roots(n, a, 1).unwrap()[0];
        prop_assert!(r.t0 > n as f64);
        prop_assert!(r.lambda0 > (n * n) as f64);
    }

    #[test]
    fn spectrum_is_sorted_and_consistent(a in 0.0f64..5.0, lmax in 1.0f64..400.0) {
        let s = limiting_spectrum(a, lmax).unwrap();
        for w in s.windows(2) {
            prop_assert!(w[0].lambda0 <= w[1].lambda0);
            prop_assert!(w[1].lambda0.sqrt() - w[0].lambda0.sqrt() > MERGE_TOL);
        }
        for e in &s {
            prop_assert!(e.lambda0 <= lmax);
            let m: u32 = e.contributors.iter().map(|&(n, _)| if n == 0 { 1 } else { 2 }).sum();
            prop_assert_eq!(m, e.multiplicity);
        }
    }

    #[test]
    fn cross_wronskian_is_antisymmetric(n in 0u32..10, m in 0u32..10, t in 0.1f64..30.0) {
        prop_assume!(n != m);
        prop_assert_eq!(F_nm(n, m, t).unwrap(), -F_nm(m, n, t).unwrap());
    }
}
