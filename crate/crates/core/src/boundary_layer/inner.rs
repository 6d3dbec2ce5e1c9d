//! Inner functions near a Dirichlet arc, in coordinates sigma = xi / eta.
//!
//! With y = sigma1 + i sigma2 and s = sqrt(y^2 - 1) = sqrt(y - 1) sqrt(y + 1):
//!   Y  = Re ln(y + s)
//!   Y1 = Re s
//!   Y2 = (sigma1 Y - ln 2 Y1) / 2

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerPoint {
    pub sigma1: f64,
    pub sigma2: f64,
}

impl InnerPoint {
    pub fn new(sigma1: f64, sigma2: f64) -> Result<Self> {
        if !(sigma2 >= 0.0) || !sigma1.is_finite() || !sigma2.is_finite() {
            return Err(Error::InvalidInput(format!("inner point ({sigma1}, {sigma2}) needs sigma2 >= 0")));
        }
        Ok(Self { sigma1, sigma2 })
    }

    fn y(&self) -> Complex64 {
        // +0 keeps the boundary values on the upper side of the cut
        Complex64::new(self.sigma1, self.sigma2.max(0.0))
    }
}

fn root(y: Complex64) -> Complex64 {
    (y - 1.0).sqrt() * (y + 1.0).sqrt()
}

#[allow(non_snake_case)]
pub fn Y(p: InnerPoint) -> f64 {
    let y = p.y();
    let s = root(y);
    // (y + s)(y - s) = 1; take the larger factor to avoid cancellation
    let (plus, minus) = ((y + s).norm(), (y - s).norm());
    if plus >= minus {
        plus.ln()
    } else {
        -minus.ln()
    }
}

#[allow(non_snake_case)]
pub fn Y1(p: InnerPoint) -> f64 {
    root(p.y()).re
}

#[allow(non_snake_case)]
pub fn Y2(p: InnerPoint) -> f64 {
    0.5 * (p.sigma1 * Y(p) - LN_2 * Y1(p))
}

/// (dY/dsigma1, dY/dsigma2); infinite at the slit endpoints.
pub fn y_gradient(p: InnerPoint) -> (f64, f64) {
    let inv = root(p.y()).inv();
    (inv.re, -inv.im)
}

/// w_{i,0} = -alpha_i Y and w_{i,1} = sigma2^2 dw_{i,0}/dsigma2 / 2.
pub fn w(i: u32, j: u32, p: InnerPoint, alpha_i: f64) -> Result<f64> {
    if i == 0 {
        return Err(Error::InvalidInput("w needs i >= 1".into()));
    }
    match j {
        0 => Ok(-alpha_i * Y(p)),
        1 => {
            if p.sigma2 == 0.0 {
                return Ok(0.0);
            }
            Ok(-alpha_i * 0.5 * p.sigma2 * p.sigma2 * y_gradient(p).1)
        }
        _ => Err(Error::InvalidInput(format!("w needs j in {{0, 1}}, got {j}"))),
    }
}

/// w^ad_{1,1} = -2 n alpha_1 Y2 + coef Y1, with the Y1 coefficient supplied.
pub fn w_ad_11(p: InnerPoint, n: u32, alpha1: f64, y1_coef: f64) -> f64 {
    -2.0 * n as f64 * alpha1 * Y2(p) + y1_coef * Y1(p)
}
