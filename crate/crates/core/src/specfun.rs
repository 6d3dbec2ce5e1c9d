//! Bessel functions of the first kind for integer order, their zeros, and
//! the constants used by the eigenvalue corrections.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::roots::newton_bracketed;

/// Upper end of the supported argument range.
pub const T_MAX: f64 = 1.0e4;

/// Apery's constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_285_4;

pub fn zeta3() -> f64 {
    ZETA3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    OfJ,
    OfJPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroIndex {
    pub n: u32,
    pub k: u32,
    pub kind: ZeroKind,
}

fn check_arg(t: f64) -> Result<()> {
    if !t.is_finite() || !(0.0..=T_MAX).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, {T_MAX}]")));
    }
    Ok(())
}

/// J_n(t) for 0 <= t <= 1e4.
pub fn bessel_j(n: u32, t: f64) -> Result<f64> {
    check_arg(t)?;
    Ok(j_unchecked(n, t))
}

/// J_n'(t) through J_n' = (J_{n-1} - J_{n+1})/2 and J_0' = -J_1.
pub fn bessel_j_prime(n: u32, t: f64) -> Result<f64> {
    check_arg(t)?;
    Ok(jp_unchecked(n, t))
}

pub(crate) fn j_unchecked(n: u32, t: f64) -> f64 {
    if t == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    let q = 0.25 * t * t;
    if t <= 2.0 || q < nf + 1.0 {
        series(n, t)
    } else if t > 30.0f64.max(nf * nf) {
        hankel(n, t)
    } else {
        miller(n as usize, t)[n as usize]
    }
}

pub(crate) fn jp_unchecked(n: u32, t: f64) -> f64 {
    if n == 0 {
        -j_unchecked(1, t)
    } else {
        0.5 * (j_unchecked(n - 1, t) - j_unchecked(n + 1, t))
    }
}

/// J_0(t), ..., J_nmax(t) from one backward sweep.
pub fn bessel_j_orders(nmax: usize, t: f64) -> Result<Vec<f64>> {
    check_arg(t)?;
    if t == 0.0 {
        let mut v = vec![0.0; nmax + 1];
        v[0] = 1.0;
        return Ok(v);
    }
    let mut v = miller(nmax, t);
    v.truncate(nmax + 1);
    Ok(v)
}

fn series(n: u32, t: f64) -> f64 {
    let h = 0.5 * t;
    let mut term = 1.0;
    for i in 1..=n {
        term *= h / i as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = -h * h;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + n as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// Backward recurrence normalised by J_0 + 2 sum J_{2k} = 1.
/// Returns at least `nmax + 1` values.
fn miller(nmax: usize, t: f64) -> Vec<f64> {
    let top = (nmax as f64).max(t) + 40.0 + 12.0 * t.cbrt();
    let mut m = top.ceil() as usize;
    if m % 2 == 1 {
        m += 1;
    }
    let mut v = vec![0.0; m + 2];
    v[m] = 1e-30;
    let mut norm = 0.0;
    for k in (1..=m).rev() {
        let jm1 = (2.0 * k as f64 / t) * v[k] - v[k + 1];
        v[k - 1] = jm1;
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * jm1;
        }
        if jm1.abs() > 1e250 {
            for x in v[k - 1..].iter_mut() {
                *x *= 1e-250;
            }
            norm *= 1e-250;
        }
    }
    norm += v[0];
    for x in v.iter_mut() {
        *x /= norm;
    }
    v
}

fn hankel(n: u32, t: f64) -> f64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    let z = 8.0 * t;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kk = (2 * k - 1) as f64;
        term *= (mu - kk * kk) / (k as f64 * z);
        if term.abs() > last || term == 0.0 {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = t - (0.5 * n as f64 + 0.25) * PI;
    (2.0 / (PI * t)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn j_second(n: u32, t: f64) -> f64 {
    // Bessel equation: t^2 J'' + t J' + (t^2 - n^2) J = 0
    let nf = n as f64;
    -jp_unchecked(n, t) / t - (1.0 - nf * nf / (t * t)) * j_unchecked(n, t)
}

fn mcmahon(n: u32, k: u32, kind: ZeroKind) -> f64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    match kind {
        ZeroKind::OfJ => {
            let b = (k as f64 + 0.5 * n as f64 - 0.25) * PI;
            let e = 8.0 * b;
            b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        }
        ZeroKind::OfJPrime => {
            // J_0' has its first positive zero where J_1 does, one McMahon index later
            let kk = if n == 0 { k + 1 } else { k };
            let b = (kk as f64 + 0.5 * n as f64 - 0.75) * PI;
            let e = 8.0 * b;
            b - (mu + 3.0) / e - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * e.powi(3))
        }
    }
}

/// k-th positive zero of J_n or J_n' (1 <= k <= 100).
pub fn bessel_zero(idx: ZeroIndex) -> Result<f64> {
    let ZeroIndex { n, k, kind } = idx;
    if k == 0 || k > 100 {
        return Err(Error::Domain(format!("zero index k = {k} outside 1..=100")));
    }
    let f = |t: f64| match kind {
        ZeroKind::OfJ => j_unchecked(n, t),
        ZeroKind::OfJPrime => jp_unchecked(n, t),
    };
    let df = |t: f64| match kind {
        ZeroKind::OfJ => jp_unchecked(n, t),
        ZeroKind::OfJPrime => j_second(n, t),
    };
    // J_n and J_n' are positive on (0, n]; J_0' is negative up to its first zero
    let mut a = if n == 0 { 0.5 } else { n as f64 };
    let mut fa = f(a);
    let h = 0.5;
    let mut found = 0;
    while a < T_MAX {
        let b = a + h;
        let fb = f(b);
        if fb == 0.0 || fa.signum() != fb.signum() {
            found += 1;
            if found == k {
                let guess = mcmahon(n, k, kind);
                return newton_bracketed(|t| (f(t), df(t)), a, b, Some(guess), 1e-15);
            }
            if fb == 0.0 {
                // step past an exact grid zero so it is not counted twice
                a = b + 1e-9;
                fa = f(a);
                continue;
            }
        }
        a = b;
        fa = fb;
    }
    Err(Error::Domain(format!("zero {k} of order {n} beyond t = {T_MAX}")))
}
