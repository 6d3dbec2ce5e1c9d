//! The boundary-layer function X(xi) = Re ln sin z + ln 2 - xi2 and its partials.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::tail_integral;

/// Highest total derivative order exposed by [`x_partials`].
pub const MAX_PARTIAL_ORDER: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchedPoint {
    pub xi1: f64,
    pub xi2: f64,
}

impl StretchedPoint {
    pub fn new(xi1: f64, xi2: f64) -> Result<Self> {
        if !(xi2 >= 0.0) || !xi1.is_finite() || !xi2.is_finite() {
            return Err(Error::InvalidInput(format!("stretched point ({xi1}, {xi2}) needs xi2 >= 0")));
        }
        Ok(Self { xi1, xi2 })
    }
}

/// xi1 reduced to [-pi/2, pi/2).
fn reduce(xi1: f64) -> f64 {
    let r = (xi1 + 0.5 * PI).rem_euclid(PI) - 0.5 * PI;
    if r >= 0.5 * PI {
        r - PI
    } else {
        r
    }
}

fn check(xi1: f64, xi2: f64) -> Result<f64> {
    if !(xi2 >= 0.0) || !xi1.is_finite() {
        return Err(Error::InvalidInput(format!("({xi1}, {xi2}) needs xi2 >= 0")));
    }
    let r = reduce(xi1);
    if xi2 == 0.0 && r == 0.0 {
        return Err(Error::SingularPoint(xi1, xi2));
    }
    Ok(r)
}

pub(crate) fn x_raw(xi1: f64, xi2: f64) -> f64 {
    let r = reduce(xi1);
    let q = (-2.0 * xi2).exp();
    if q < 0.5 {
        0.5 * (q * (q - 2.0 * (2.0 * r).cos())).ln_1p()
    } else {
        let omq = -(-2.0 * xi2).exp_m1();
        let s = r.sin();
        0.5 * (omq * omq + 4.0 * q * s * s).ln()
    }
}

/// X(xi) = ln|1 - e^{2iz}|, z = xi1 + i xi2.
pub fn x(p: StretchedPoint) -> Result<f64> {
    check(p.xi1, p.xi2)?;
    Ok(x_raw(p.xi1, p.xi2))
}

/// Coefficients of Q_k(u) with F^{(k)} = Q_k(u), u = F' = cot z + i,
/// u' = 2iu - u^2.
fn derivative_polys(order: usize) -> Vec<Vec<Complex64>> {
    let i2 = Complex64::new(0.0, 2.0);
    let mut out = vec![vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];
    for _ in 1..order {
        let q = out.last().expect("non-empty");
        let mut next = vec![Complex64::new(0.0, 0.0); q.len() + 1];
        for (j, c) in q.iter().enumerate().skip(1) {
            let d = *c * j as f64; // coefficient of u^{j-1} in Q'
            next[j] += d * i2; // times 2iu
            next[j + 1] -= d; // times -u^2
        }
        out.push(next);
    }
    out
}

/// d^k/dz^k ln(1 - e^{2iz}) for k >= 1.
pub(crate) fn f_derivative(xi1: f64, xi2: f64, k: usize) -> Complex64 {
    let r = reduce(xi1);
    let w = Complex64::from_polar((-2.0 * xi2).exp(), 2.0 * r);
    let one = Complex64::new(1.0, 0.0);
    let u = Complex64::new(0.0, 2.0) * w / (w - one);
    let polys = derivative_polys(k);
    let q = &polys[k - 1];
    let mut acc = Complex64::new(0.0, 0.0);
    for c in q.iter().rev() {
        acc = acc * u + c;
    }
    acc
}

/// d1-fold xi1 and d2-fold xi2 partial derivative of X.
pub fn x_partials(p: StretchedPoint, d1: u32, d2: u32) -> Result<f64> {
    if d1 + d2 > MAX_PARTIAL_ORDER {
        return Err(Error::InvalidInput(format!("derivative order {} exceeds {MAX_PARTIAL_ORDER}", d1 + d2)));
    }
    check(p.xi1, p.xi2)?;
    Ok(partial_raw(p.xi1, p.xi2, d1, d2))
}

pub(crate) fn partial_raw(xi1: f64, xi2: f64, d1: u32, d2: u32) -> f64 {
    let k = (d1 + d2) as usize;
    if k == 0 {
        return x_raw(xi1, xi2);
    }
    // d/dxi2 acts on analytic functions as i d/dz
    let ipow = match d2 % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    (ipow * f_derivative(xi1, xi2, k)).re
}

/// A_k[f](a) = iterated tail integral along a line xi1 = const.
pub fn a_k_on_axis<F: Fn(f64) -> f64>(k: u32, f: F, xi2: f64) -> Result<f64> {
    crate::quadrature::a_k_on_axis(k, f, xi2)
}

/// A_1 applied to a two-dimensional function along the vertical ray above p.
pub fn a1_ray<F: Fn(f64, f64) -> f64>(f: F, p: StretchedPoint) -> Result<f64> {
    tail_integral(|t| t * f(p.xi1, t), p.xi2, 1e-14)
}

/// int_{xi2}^inf X(xi1, t) dt.
pub fn x_tail(p: StretchedPoint) -> Result<f64> {
    tail_integral(|t| x_raw(p.xi1, t), p.xi2, 1e-14)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_points_are_singular() {
        for m in [-2.0, 0.0, 1.0, 3.0] {
            let p = StretchedPoint { xi1: m * PI, xi2: 0.0 };
            assert!(matches!(x(p), Err(Error::SingularPoint(..))));
            assert!(x_partials(p, 0, 1).is_err());
        }
    }

    #[test]
    fn order_bound() {
        let p = StretchedPoint { xi1: 0.3, xi2: 0.4 };
        assert!(x_partials(p, 4, 3).is_err());
        assert!(x_partials(p, 3, 3).is_ok());
    }

    #[test]
    fn reduction_range() {
        for v in [-7.0, -PI / 2.0, 0.0, PI / 2.0, 10.0] {
            let r = reduce(v);
            assert!((-0.5 * PI..0.5 * PI).contains(&r), "{v} -> {r}");
        }
    }

    #[test]
    fn first_polys() {
        let p = derivative_polys(3);
        // Q_2 = 2iu - u^2
        assert_eq!(p[1][1], Complex64::new(0.0, 2.0));
        assert_eq!(p[1][2], Complex64::new(-1.0, 0.0));
        // Q_3 = (2i - 2u)(2iu - u^2) = -4u - 6iu^2 + 2u^3
        assert_eq!(p[2][1], Complex64::new(-4.0, 0.0));
        assert_eq!(p[2][2], Complex64::new(0.0, -6.0));
        assert_eq!(p[2][3], Complex64::new(2.0, 0.0));
    }
}
