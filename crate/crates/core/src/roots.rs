//! Bracketed root refinement shared by the Bessel, Robin and coupling searches.

use crate::error::{Error, Result};

/// Newton iteration kept inside a sign-change bracket; falls back to
/// bisection whenever a step leaves the bracket or stalls.
///
/// `f` returns `(value, derivative)`. `seed` defaults to the midpoint.
pub fn newton_bracketed<F>(f: F, lo: f64, hi: f64, seed: Option<f64>, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (mut a, mut b) = if lo < hi { (lo, hi) } else { (hi, lo) };
    let (fa, _) = f(a);
    let (fb, _) = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::InvalidInput(format!("no sign change on [{a}, {b}] ({fa:e}, {fb:e})")));
    }
    let sa = fa.signum();
    let mut x = match seed {
        Some(s) if s > a && s < b => s,
        _ => 0.5 * (a + b),
    };
    let mut dx_old = b - a;
    for _ in 0..300 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == sa {
            a = x;
        } else {
            b = x;
        }
        let tol = xtol * x.abs().max(1.0);
        if b - a <= tol {
            return Ok(0.5 * (a + b));
        }
        let xn = x - fx / dfx;
        let dx = (xn - x).abs();
        if dfx != 0.0 && xn.is_finite() && xn > a && xn < b && dx < 0.5 * dx_old {
            dx_old = dx;
            x = xn;
            if dx <= 0.25 * tol {
                return Ok(x);
            }
        } else {
            dx_old = 0.5 * (b - a);
            x = 0.5 * (a + b);
        }
    }
    Ok(0.5 * (a + b))
}

/// Plain bisection on a sign change; used where derivatives are unavailable.
pub fn bisect<F>(f: F, lo: f64, hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidInput(format!("no sign change on [{a}, {b}]")));
    }
    while (b - a).abs() > xtol * a.abs().max(1.0) {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
