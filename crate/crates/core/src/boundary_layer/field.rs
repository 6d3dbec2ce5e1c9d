//! Composite approximation of the perturbed eigenfunction on a polar grid:
//! outer Bessel mode, boundary-layer corrector under chi(1 - r), and the
//! inner arc solutions under per-arc cutoffs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::correctors::{v_i, CorrectorParams};
use super::inner::{w, InnerPoint};
use super::layer::StretchedPoint;
use crate::asymptotics::{eigenvalue_series, PerturbationParams};
use crate::error::{Error, Result};
use crate::limiting::RobinRoot;
use crate::specfun::j_unchecked;

/// Smooth cutoff: 1 for t <= 1/3, 0 for t >= 1/2, exponential bump in between.
pub fn chi(t: f64) -> f64 {
    if t <= 1.0 / 3.0 {
        return 1.0;
    }
    if t >= 0.5 {
        return 0.0;
    }
    let s = (t - 1.0 / 3.0) * 6.0;
    let a = (-1.0 / s).exp();
    let b = (-1.0 / (1.0 - s)).exp();
    1.0 - a / (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Cos,
    Sin,
    Radial,
}

impl Parity {
    fn phi(self, n: u32, theta: f64) -> f64 {
        match self {
            Parity::Cos => (n as f64 * theta).cos(),
            Parity::Sin => (n as f64 * theta).sin(),
            Parity::Radial => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
}

impl PolarGrid {
    /// nr radii spread evenly over [r_min, r_max] and ntheta angles over [0, 2 pi).
    pub fn uniform(nr: usize, r_min: f64, r_max: f64, ntheta: usize) -> Result<Self> {
        if nr == 0 || ntheta == 0 {
            return Err(Error::InvalidInput("grid needs at least one point".into()));
        }
        let r = if nr == 1 {
            vec![r_max]
        } else {
            (0..nr).map(|i| r_min + (r_max - r_min) * i as f64 / (nr - 1) as f64).collect()
        };
        let theta = (0..ntheta).map(|j| 2.0 * PI * j as f64 / ntheta as f64).collect();
        let g = Self { r, theta };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r.is_empty() || self.theta.is_empty() {
            return Err(Error::InvalidInput("grid needs at least one point".into()));
        }
        if let Some(r) = self.r.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return Err(Error::InvalidInput(format!("radius {r} outside [0, 1]")));
        }
        if let Some(t) = self.theta.iter().find(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(format!("angle {t} is not finite")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.r.len() * self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub r: f64,
    pub theta: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeField {
    pub order: u32,
    pub n: u32,
    pub parity: Parity,
    pub params: PerturbationParams,
    pub lambda_used: f64,
    pub alpha1: f64,
    pub samples: Vec<FieldSample>,
}

/// Pointwise evaluator behind [`composite_field`].
#[derive(Debug, Clone, Copy)]
pub struct CompositeModel {
    pub n: u32,
    pub parity: Parity,
    pub order: u32,
    pub params: PerturbationParams,
    pub lambda: f64,
    pub correctors: CorrectorParams,
}

impl CompositeModel {
    pub fn new(root: &RobinRoot, params: &PerturbationParams, parity: Parity, order: u32) -> Result<Self> {
        if order > 1 {
            return Err(Error::UnsupportedOrder(order));
        }
        match (root.n, parity) {
            (0, Parity::Sin) => return Err(Error::InvalidInput("sin parity needs n > 0".into())),
            (n, Parity::Radial) if n > 0 => return Err(Error::InvalidInput("radial parity needs n = 0".into())),
            _ => {}
        }
        let series = eigenvalue_series(root, params, 4)?;
        let correctors = CorrectorParams::from_branch(root.n, series.lambda0, params.coupling())?;
        Ok(Self { n: root.n, parity, order, params: *params, lambda: series.value, correctors })
    }

    pub fn value(&self, r: f64, theta: f64) -> Result<f64> {
        let eps = self.params.epsilon;
        let eta = self.params.eta;
        let phi = self.parity.phi(self.n, theta);
        let xi1 = theta / eps;
        let xi2 = (1.0 - r) / eps;
        // only the nearest arc can be inside its cutoff
        let m = (xi1 / PI).round();
        let d1 = xi1 - m * PI;
        let cut_in = chi((d1 * d1 + xi2 * xi2).sqrt() / eta.sqrt());
        let chi_eps = 1.0 - cut_in;

        let mut total = 0.0;
        if chi_eps > 0.0 {
            let mut psi = j_unchecked(self.n, self.lambda.max(0.0).sqrt() * r) * phi;
            if self.order >= 1 {
                let c = chi(1.0 - r);
                if c > 0.0 {
                    let v1 = v_i(1, StretchedPoint::new(xi1, xi2)?, &self.correctors)?;
                    psi += c * eps * v1 * phi;
                }
            }
            total += psi * chi_eps;
        }
        if self.order >= 1 && cut_in > 0.0 {
            let p = InnerPoint::new(d1 / eta, xi2 / eta)?;
            let a1 = self.correctors.alpha1;
            let inner = w(1, 0, p, a1)? + eps * eta * w(1, 1, p, a1)?;
            total += cut_in * eps * inner * phi;
        }
        Ok(total)
    }
}

/// K-th order composite approximation sampled on a polar grid.
pub fn composite_field(
    root: &RobinRoot,
    params: &PerturbationParams,
    parity: Parity,
    order: u32,
    grid: &PolarGrid,
) -> Result<CompositeField> {
    grid.validate()?;
    let model = CompositeModel::new(root, params, parity, order)?;
    let points: Vec<(f64, f64)> = grid.r.iter().flat_map(|&r| grid.theta.iter().map(move |&t| (r, t))).collect();
    let samples = points
        .par_iter()
        .map(|&(r, theta)| Ok(FieldSample { r, theta, value: model.value(r, theta)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompositeField {
        order,
        n: root.n,
        parity,
        params: *params,
        lambda_used: model.lambda,
        alpha1: model.correctors.alpha1,
        samples,
    })
}
