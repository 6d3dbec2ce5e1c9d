//! Boundary-layer correctors v_1..v_4 and the adjoint-parity terms v_1^ad, v_2^ad.
//!
//! With X' = dX/dxi2 and A_1 taken along the vertical ray:
//!   v_1 = -a1 X
//!   v_2 = -a1 xi2^2 X' / 2
//!   v_3 = -a1 (xi2^4 X''/8 + xi2^3 X'/3 + n^2 xi2^2 X/2) - a1 (L0 + 2n^2) A_1[X]/2
//!   v_4 = -a1 (xi2^6 X'''/48 + xi2^5 X''/6 + (1+n^2) xi2^4 X'/4)
//!         + (a1 L0/4) xi2^3 X + (a1 L0/4) (A_1[xi2 X] + xi2^2 int X) - a4 X
//!   v_1^ad = n a1 A_1[dX/dxi1],  v_2^ad = -a1 n xi2^3 (dX/dxi1) / 2

use serde::{Deserialize, Serialize};

use super::layer::{a1_ray, partial_raw, x_raw, x_tail, StretchedPoint};
use crate::error::{Error, Result};
use crate::specfun::{j_unchecked, jp_unchecked, ZETA3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectorParams {
    pub n: u32,
    pub lambda0: f64,
    pub alpha1: f64,
    /// Neumann flux of v_4 on the wall; zero unless set.
    pub alpha4: f64,
}

impl CorrectorParams {
    pub fn new(n: u32, lambda0: f64, alpha1: f64) -> Self {
        Self { n, lambda0, alpha1, alpha4: 0.0 }
    }

    pub fn with_alpha4(mut self, alpha4: f64) -> Self {
        self.alpha4 = alpha4;
        self
    }

    /// alpha_1 = sqrt(L0) J_n'(sqrt(L0)) and
    /// alpha_4 = -J_n(sqrt(L0)) (L0 - n^2) Lambda_3 / (2 L0), for coupling A + mu.
    pub fn from_branch(n: u32, lambda0: f64, coupling: f64) -> Result<Self> {
        if !(lambda0 > 0.0) {
            return Err(Error::InvalidInput(format!("Lambda0 = {lambda0} must be positive")));
        }
        let t = lambda0.sqrt();
        let nf2 = (n as f64).powi(2);
        let alpha1 = t * jp_unchecked(n, t);
        let d = lambda0 - nf2 + coupling * coupling;
        if d.abs() < 1e-12 {
            return Err(Error::DegenerateDenominator);
        }
        let l3 = -0.25 * ZETA3 * coupling * coupling * (lambda0 + 2.0 * nf2) * lambda0 / d;
        let alpha4 = -j_unchecked(n, t) * (lambda0 - nf2) * l3 / (2.0 * lambda0);
        Ok(Self { n, lambda0, alpha1, alpha4 })
    }
}

fn checked(p: StretchedPoint) -> Result<()> {
    super::layer::x(p).map(|_| ())
}

/// Basis pieces with unit coefficient, exposed for checks.
pub mod basis {
    use super::*;

    pub fn v21(p: StretchedPoint) -> f64 {
        0.5 * p.xi2 * p.xi2 * partial_raw(p.xi1, p.xi2, 0, 1)
    }

    pub fn v31(p: StretchedPoint, n: u32) -> f64 {
        let s = p.xi2;
        let nf2 = (n as f64).powi(2);
        s.powi(4) / 8.0 * partial_raw(p.xi1, s, 0, 2)
            + s.powi(3) / 3.0 * partial_raw(p.xi1, s, 0, 1)
            + 0.5 * nf2 * s * s * x_raw(p.xi1, s)
    }

    pub fn v32(p: StretchedPoint) -> Result<f64> {
        Ok(0.5 * a1_ray(x_raw, p)?)
    }

    pub fn v41(p: StretchedPoint, n: u32) -> f64 {
        let s = p.xi2;
        let nf2 = (n as f64).powi(2);
        s.powi(6) / 48.0 * partial_raw(p.xi1, s, 0, 3)
            + s.powi(5) / 6.0 * partial_raw(p.xi1, s, 0, 2)
            + (1.0 + nf2) / 4.0 * s.powi(4) * partial_raw(p.xi1, s, 0, 1)
    }

    pub fn v42(p: StretchedPoint) -> f64 {
        p.xi2.powi(3) * x_raw(p.xi1, p.xi2)
    }

    pub fn v43(p: StretchedPoint) -> Result<f64> {
        let a = a1_ray(|a, t| t * x_raw(a, t), p)?;
        Ok(a + p.xi2 * p.xi2 * x_tail(p)?)
    }
}

/// v_i for i in 1..=4.
pub fn v_i(i: u32, p: StretchedPoint, c: &CorrectorParams) -> Result<f64> {
    checked(p)?;
    let a1 = c.alpha1;
    let nf2 = (c.n as f64).powi(2);
    match i {
        1 => Ok(-a1 * x_raw(p.xi1, p.xi2)),
        2 => Ok(-a1 * basis::v21(p)),
        3 => Ok(-a1 * basis::v31(p, c.n) - a1 * (c.lambda0 + 2.0 * nf2) * basis::v32(p)?),
        4 => {
            let a4x = 0.25 * a1 * c.lambda0;
            Ok(-a1 * basis::v41(p, c.n) + a4x * basis::v42(p) + a4x * basis::v43(p)? - c.alpha4 * x_raw(p.xi1, p.xi2))
        }
        _ => Err(Error::InvalidInput(format!("v_i available for i = 1..4, got {i}"))),
    }
}

/// Adjoint-parity correctors v_i^ad for i in 1..=2.
pub fn v_ad_i(i: u32, p: StretchedPoint, c: &CorrectorParams) -> Result<f64> {
    checked(p)?;
    let nf = c.n as f64;
    match i {
        1 => Ok(nf * c.alpha1 * a1_ray(|a, t| partial_raw(a, t, 1, 0), p)?),
        2 => Ok(-0.5 * c.alpha1 * nf * p.xi2.powi(3) * partial_raw(p.xi1, p.xi2, 1, 0)),
        _ => Err(Error::InvalidInput(format!("v_i^ad available for i = 1..2, got {i}"))),
    }
}
