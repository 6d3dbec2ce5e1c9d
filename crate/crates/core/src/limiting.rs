//! Spectrum of the limiting Robin problem and coincidences of its roots
//! across Bessel orders.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::roots::newton_bracketed;
use crate::specfun::{bessel_zero, j_unchecked, jp_unchecked, ZeroIndex, ZeroKind};

/// Tolerance on t0 for treating roots of different orders as one eigenvalue.
pub const MERGE_TOL: f64 = 1e-8;

const SCAN_STEP: f64 = PI / 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinRoot {
    pub n: u32,
    pub k: u32,
    pub t0: f64,
    pub lambda0: f64,
    #[serde(rename = "A")]
    pub a: f64,
}

impl RobinRoot {
    /// 1 for the radial family, 2 for cos/sin pairs.
    pub fn multiplicity(&self) -> u32 {
        if self.n == 0 {
            1
        } else {
            2
        }
    }

    pub fn residual(&self) -> f64 {
        robin_residual(self.n, self.a, self.t0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitingEigenvalue {
    pub lambda0: f64,
    /// (n, k) pairs sharing this eigenvalue.
    pub contributors: Vec<(u32, u32)>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyCertificate {
    pub n: u32,
    pub m: u32,
    pub t0: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub bracket: (f64, f64),
    pub residual_n: f64,
    pub residual_m: f64,
}

/// f_{n,A}(t) = t J_n'(t) + A J_n(t).
pub fn robin_residual(n: u32, a: f64, t: f64) -> f64 {
    t * jp_unchecked(n, t) + a * j_unchecked(n, t)
}

/// d/dt f_{n,A}(t) = A J_n' - (t - n^2/t) J_n, from Bessel's equation.
pub fn robin_residual_dt(n: u32, a: f64, t: f64) -> f64 {
    let nf = n as f64;
    let base = if t > 0.0 { t - nf * nf / t } else { 0.0 };
    a * jp_unchecked(n, t) - base * j_unchecked(n, t)
}

fn polish(n: u32, a: f64, lo: f64, hi: f64) -> Result<f64> {
    newton_bracketed(|t| (robin_residual(n, a, t), robin_residual_dt(n, a, t)), lo, hi, None, 1e-15)
}

/// Roots in ascending order while `keep(count_so_far, t)` holds.
fn scan_roots<F>(n: u32, a: f64, keep: F) -> Result<Vec<RobinRoot>>
where
    F: Fn(usize, f64) -> bool,
{
    let mut out = Vec::new();
    let mut start = n as f64;
    if n == 0 && a == 0.0 {
        out.push(RobinRoot { n, k: 1, t0: 0.0, lambda0: 0.0, a });
        start = 1e-3;
    }
    let mut lo = start;
    let mut flo = robin_residual(n, a, lo);
    while keep(out.len(), lo) {
        let hi = lo + SCAN_STEP;
        if hi > crate::specfun::T_MAX {
            break;
        }
        let fhi = robin_residual(n, a, hi);
        if flo == 0.0 && lo > 0.0 {
            // root exactly on the previous grid point was already recorded
        } else if fhi == 0.0 || flo.signum() != fhi.signum() {
            let t0 = polish(n, a, lo, hi)?;
            if !keep(out.len(), t0) {
                break;
            }
            out.push(RobinRoot { n, k: out.len() as u32 + 1, t0, lambda0: t0 * t0, a });
        }
        lo = hi;
        flo = fhi;
    }
    Ok(out)
}

fn check_a(a: f64) -> Result<()> {
    if !a.is_finite() || a < 0.0 {
        return Err(Error::InvalidInput(format!("Robin coefficient A = {a} must be >= 0")));
    }
    Ok(())
}

/// First `count` roots of t J_n'(t) + A J_n(t) = 0.
pub fn robin_roots(n: u32, a: f64, count: usize) -> Result<Vec<RobinRoot>> {
    check_a(a)?;
    if count == 0 || count > 50 {
        return Err(Error::InvalidInput(format!("count = {count} outside 1..=50")));
    }
    scan_roots(n, a, |len, _| len < count)
}

/// Roots with t0 <= tmax.
pub fn robin_roots_below(n: u32, a: f64, tmax: f64) -> Result<Vec<RobinRoot>> {
    check_a(a)?;
    scan_roots(n, a, |_, t| t <= tmax)
}

/// All limiting eigenvalues up to `lambda_max`, merged across orders.
pub fn limiting_spectrum(a: f64, lambda_max: f64) -> Result<Vec<LimitingEigenvalue>> {
    check_a(a)?;
    if !(lambda_max > 0.0 && lambda_max <= 2500.0) {
        return Err(Error::InvalidInput(format!("lambda_max = {lambda_max} outside (0, 2500]")));
    }
    let tmax = lambda_max.sqrt();
    let mut all = Vec::new();
    // the first root of order n exceeds n
    let mut n = 0u32;
    while (n as f64) <= tmax {
        all.extend(robin_roots_below(n, a, tmax)?);
        n += 1;
    }
    all.sort_by(|x, y| x.t0.total_cmp(&y.t0));
    let mut out: Vec<LimitingEigenvalue> = Vec::new();
    let mut anchor = f64::NAN;
    for r in all {
        match out.last_mut() {
            Some(last) if (r.t0 - anchor).abs() <= MERGE_TOL => {
                last.contributors.push((r.n, r.k));
                last.multiplicity += r.multiplicity();
            }
            _ => {
                anchor = r.t0;
                out.push(LimitingEigenvalue {
                    lambda0: r.lambda0,
                    contributors: vec![(r.n, r.k)],
                    multiplicity: r.multiplicity(),
                });
            }
        }
    }
    Ok(out)
}

/// Cross-Wronskian t (J_m' J_n - J_n' J_m), oriented so that F_{6,3}(8) < 0.
#[allow(non_snake_case)]
pub fn F_nm(n: u32, m: u32, t: f64) -> Result<f64> {
    if n == m {
        return Err(Error::InvalidInput("F_nm needs n != m".into()));
    }
    if !(t > 0.0 && t <= crate::specfun::T_MAX) {
        return Err(Error::Domain(format!("t = {t} must be positive")));
    }
    Ok(f_nm(n, m, t))
}

fn f_nm(n: u32, m: u32, t: f64) -> f64 {
    t * (jp_unchecked(m, t) * j_unchecked(n, t) - jp_unchecked(n, t) * j_unchecked(m, t))
}

fn f_nm_dt(n: u32, m: u32, t: f64) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    (mf * mf - nf * nf) / t * j_unchecked(n, t) * j_unchecked(m, t)
}

fn zeros_inside(order: u32, kind: ZeroKind, lo: f64, hi: f64) -> Result<Option<f64>> {
    for k in 1..=100 {
        let z = bessel_zero(ZeroIndex { n: order, k, kind })?;
        if z >= hi {
            return Ok(None);
        }
        if z > lo {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Coupling A > 0 at which orders n and m share a root of the Robin equation,
/// certified on a caller-supplied bracket.
pub fn degenerate_a(n: u32, m: u32, bracket: (f64, f64)) -> Result<DegeneracyCertificate> {
    if n == m {
        return Err(Error::InvalidInput("degenerate_A needs n != m".into()));
    }
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi <= crate::specfun::T_MAX) {
        return Err(Error::NoSignChange(lo, hi));
    }
    let (flo, fhi) = (f_nm(n, m, lo), f_nm(n, m, hi));
    if flo.signum() == fhi.signum() || flo == 0.0 || fhi == 0.0 {
        return Err(Error::NoSignChange(lo, hi));
    }
    for order in [n, m] {
        if let Some(at) = zeros_inside(order, ZeroKind::OfJ, lo, hi)? {
            return Err(Error::ZeroInsideBracket { order, at });
        }
    }
    let t0 = newton_bracketed(|t| (f_nm(n, m, t), f_nm_dt(n, m, t)), lo, hi, None, 1e-15)?;
    // at a root of F the ratios t J'/J of both orders coincide, so the sign
    // test is symmetric in (n, m) only when made at t0
    if jp_unchecked(n, t0) * j_unchecked(n, t0) >= 0.0 {
        return Err(Error::WrongSign(t0));
    }
    let a = -t0 * jp_unchecked(n, t0) / j_unchecked(n, t0);
    let residual_n = robin_residual(n, a, t0);
    let residual_m = robin_residual(m, a, t0);
    if !(a > 0.0) || residual_n.abs() > 1e-9 || residual_m.abs() > 1e-9 {
        return Err(Error::WrongSign(t0));
    }
    Ok(DegeneracyCertificate { n, m, t0, a, bracket, residual_n, residual_m })
}
