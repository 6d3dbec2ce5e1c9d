//! Two-parameter eigenvalue asymptotics: Lambda_0(mu) by continuation, the
//! closed-form corrections Lambda_3, Lambda_4, partial sums and gap predictions.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::limiting::{robin_residual, robin_residual_dt, robin_roots, RobinRoot};
use crate::roots::newton_bracketed;
use crate::specfun::ZETA3;

/// Continuation window for mu.
pub const MU_WINDOW: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationParams {
    /// Number of Dirichlet arcs N.
    #[serde(rename = "N")]
    pub n_arcs: u32,
    pub epsilon: f64,
    pub eta: f64,
    #[serde(rename = "A")]
    pub a: f64,
    pub mu: f64,
}

impl PerturbationParams {
    /// Geometry first: mu follows from eta through eta = exp(-1/(eps (A + mu))).
    pub fn from_geometry(n_arcs: u32, eta: f64, a: f64) -> Result<Self> {
        check_n(n_arcs)?;
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidInput(format!("A = {a} must be >= 0")));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::OutOfRegime(format!("eta = {eta} must lie in (0, 1)")));
        }
        let epsilon = 2.0 / n_arcs as f64;
        let mu = -1.0 / (epsilon * eta.ln()) - a;
        if !(a + mu > 0.0) || !mu.is_finite() {
            return Err(Error::OutOfRegime(format!("A + mu = {} <= 0", a + mu)));
        }
        Ok(Self { n_arcs, epsilon, eta, a, mu })
    }

    /// Coupling first: eta = exp(-1/(eps (A + mu))).
    pub fn from_mu(n_arcs: u32, a: f64, mu: f64) -> Result<Self> {
        check_n(n_arcs)?;
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidInput(format!("A = {a} must be >= 0")));
        }
        if !(a + mu > 0.0) {
            return Err(Error::OutOfRegime(format!("A + mu = {} <= 0", a + mu)));
        }
        let epsilon = 2.0 / n_arcs as f64;
        let eta = (-1.0 / (epsilon * (a + mu))).exp();
        if !(eta > 0.0) {
            return Err(Error::OutOfRegime(format!("eta underflows for A + mu = {}", a + mu)));
        }
        Ok(Self { n_arcs, epsilon, eta, a, mu })
    }

    pub fn coupling(&self) -> f64 {
        self.a + self.mu
    }

    /// Angular half-width of each Dirichlet arc.
    pub fn half_width(&self) -> f64 {
        self.epsilon * self.eta
    }
}

fn check_n(n_arcs: u32) -> Result<()> {
    if n_arcs < 4 || !n_arcs.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("N = {n_arcs} must be even and >= 4")));
    }
    Ok(())
}

pub fn params_from_geometry(n_arcs: u32, eta: f64, a: f64) -> Result<PerturbationParams> {
    PerturbationParams::from_geometry(n_arcs, eta, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticEigenvalue {
    pub root: RobinRoot,
    #[serde(rename = "Lambda0")]
    pub lambda0: f64,
    #[serde(rename = "Lambda3")]
    pub lambda3: f64,
    #[serde(rename = "Lambda4")]
    pub lambda4: f64,
    pub params: PerturbationParams,
    pub order: u32,
    /// Partial sum of the series up to `order`.
    pub value: f64,
    /// The remainder is O(eps^M (A + mu)) with M = order + 1.
    pub remainder_exponent: u32,
    pub remainder_factor: f64,
    pub predicted_multiplicity: u32,
}

/// Root of t J_n'(t) + (A + mu) J_n(t) on the branch through the given root.
pub fn lambda0_of_mu(root: &RobinRoot, a: f64, mu: f64) -> Result<f64> {
    if mu == 0.0 && a == root.a {
        return Ok(root.lambda0);
    }
    if !(a + mu > 0.0) {
        return Err(Error::OutOfRegime(format!("A + mu = {} <= 0", a + mu)));
    }
    if !(mu.abs() <= MU_WINDOW) {
        return Err(Error::InvalidInput(format!("|mu| = {} exceeds {MU_WINDOW}", mu.abs())));
    }
    let n = root.n;
    let k = root.k as usize;
    let roots = robin_roots(n, a, k + 1)?;
    let here = roots[k - 1].t0;
    let next = roots[k].t0;
    let hi = 0.5 * (here + next);
    let lo = if k >= 2 {
        0.5 * (roots[k - 2].t0 + here)
    } else if n == 0 {
        0.0
    } else {
        n as f64
    };
    let c = a + mu;
    let seed = if here == 0.0 { (2.0 * mu).sqrt() } else { here };
    let g = |t: f64| (robin_residual(n, c, t), robin_residual_dt(n, c, t));
    let (glo, ghi) = (g(lo).0, g(hi).0);
    if glo.signum() == ghi.signum() {
        return Err(Error::BranchLost(format!("no sign change on [{lo}, {hi}] for n = {n}, A + mu = {c}")));
    }
    let t = newton_bracketed(g, lo, hi, Some(seed), 1e-15).map_err(|e| Error::BranchLost(e.to_string()))?;
    Ok(t * t)
}

fn denominator(n: u32, c: f64, lambda0: f64) -> Result<f64> {
    let nf = n as f64;
    let d = lambda0 - nf * nf + c * c;
    if d.abs() < 1e-12 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(d)
}

/// -(zeta(3)/4) (A+mu)^2 (Lambda0 + 2n^2) Lambda0 / (Lambda0 - n^2 + (A+mu)^2).
pub fn lambda3(root: &RobinRoot, a: f64, mu: f64, lambda0: f64) -> Result<f64> {
    let c = a + mu;
    let nf = root.n as f64;
    let d = denominator(root.n, c, lambda0)?;
    Ok(-0.25 * ZETA3 * c * c * (lambda0 + 2.0 * nf * nf) * lambda0 / d)
}

/// (pi^4/5760) (A+mu)^2 (8 Lambda0 + 1) Lambda0 / (Lambda0 - n^2 + (A+mu)^2).
pub fn lambda4(root: &RobinRoot, a: f64, mu: f64, lambda0: f64) -> Result<f64> {
    let c = a + mu;
    let d = denominator(root.n, c, lambda0)?;
    Ok(PI.powi(4) / 5760.0 * c * c * (8.0 * lambda0 + 1.0) * lambda0 / d)
}

/// Partial sum Lambda0 + eps^3 Lambda3 + eps^4 Lambda4 truncated at `order`.
pub fn eigenvalue_series(root: &RobinRoot, params: &PerturbationParams, order: u32) -> Result<AsymptoticEigenvalue> {
    if !matches!(order, 0 | 3 | 4) {
        return Err(Error::UnsupportedOrder(order));
    }
    if root.a != params.a {
        return Err(Error::InvalidInput(format!("root computed for A = {} but params carry A = {}", root.a, params.a)));
    }
    let (a, mu, eps) = (params.a, params.mu, params.epsilon);
    let l0 = lambda0_of_mu(root, a, mu)?;
    let l3 = lambda3(root, a, mu, l0)?;
    let l4 = lambda4(root, a, mu, l0)?;
    let s3 = l0 + eps.powi(3) * l3;
    let value = match order {
        0 => l0,
        3 => s3,
        _ => s3 + eps.powi(4) * l4,
    };
    Ok(AsymptoticEigenvalue {
        root: *root,
        lambda0: l0,
        lambda3: l3,
        lambda4: l4,
        params: *params,
        order,
        value,
        remainder_exponent: order + 1,
        remainder_factor: a + mu,
        predicted_multiplicity: root.multiplicity(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPrediction {
    /// Order-4 series of the first branch minus that of the second.
    pub signed_gap: f64,
    /// Closed-form leading term where one is available (A = 0, or mu = 0).
    pub leading_term: Option<f64>,
}

/// Splitting of a shared limiting eigenvalue between two Bessel orders.
pub fn eigenvalue_gap(root1: &RobinRoot, root2: &RobinRoot, params: &PerturbationParams) -> Result<GapPrediction> {
    if root1.n == root2.n {
        return Err(Error::InvalidInput("gap needs two distinct orders".into()));
    }
    if (root1.lambda0 - root2.lambda0).abs() > 1e-8 {
        return Err(Error::NotDegenerate(root1.lambda0, root2.lambda0));
    }
    let s1 = eigenvalue_series(root1, params, 4)?;
    let s2 = eigenvalue_series(root2, params, 4)?;
    let l0 = 0.5 * (root1.lambda0 + root2.lambda0);
    let n2 = (root1.n as f64).powi(2);
    let m2 = (root2.n as f64).powi(2);
    let (a, mu, eps) = (params.a, params.mu, params.epsilon);
    let leading_term = if a == 0.0 {
        Some(mu * 2.0 * l0 * (n2 - m2) / ((l0 - n2) * (l0 - m2)))
    } else if mu == 0.0 {
        let a2 = a * a;
        Some(
            -eps.powi(3) * (a2 * l0 * ZETA3 / 4.0) * (2.0 * a2 + 3.0 * l0) * (n2 - m2)
                / ((l0 - n2 + a2) * (l0 - m2 + a2)),
        )
    } else {
        None
    };
    Ok(GapPrediction { signed_gap: s1.value - s2.value, leading_term })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_inversion() {
        let p = params_from_geometry(20, (-1.0f64 / 0.1).exp(), 1.0).unwrap();
        assert_eq!(p.epsilon, 0.1);
        assert!(p.mu.abs() < 1e-12);
        let p = params_from_geometry(20, (-5.0f64).exp(), 1.0).unwrap();
        assert!((p.mu - 1.0).abs() < 1e-12);
        assert!(matches!(params_from_geometry(20, 1.2, 1.0), Err(Error::OutOfRegime(_))));
        assert!(params_from_geometry(3, 0.1, 1.0).is_err());
        assert!(params_from_geometry(2, 0.1, 1.0).is_err());
    }

    #[test]
    fn from_mu_roundtrip() {
        let p = PerturbationParams::from_mu(16, 1.0, 0.2).unwrap();
        let q = params_from_geometry(16, p.eta, 1.0).unwrap();
        assert!((q.mu - 0.2).abs() < 1e-12);
        assert!(PerturbationParams::from_mu(16, 0.0, -0.1).is_err());
    }

    #[test]
    fn unsupported_orders() {
        let r = robin_roots(0, 1.0, 1).unwrap()[0];
        let p = PerturbationParams::from_mu(16, 1.0, 0.0).unwrap();
        for o in [1, 2, 5] {
            assert_eq!(eigenvalue_series(&r, &p, o), Err(Error::UnsupportedOrder(o)));
        }
    }

    #[test]
    fn root_must_match_params() {
        let r = robin_roots(0, 1.0, 1).unwrap()[0];
        let p = PerturbationParams::from_mu(16, 0.5, 0.0).unwrap();
        assert!(eigenvalue_series(&r, &p, 0).is_err());
    }

    #[test]
    fn window_enforced() {
        let r = robin_roots(0, 1.0, 1).unwrap()[0];
        assert!(lambda0_of_mu(&r, 1.0, 0.6).is_err());
        assert!(lambda0_of_mu(&r, 1.0, -1.0).is_err());
    }

    #[test]
    fn gap_needs_distinct_orders_and_shared_value() {
        let r0 = robin_roots(0, 1.0, 1).unwrap()[0];
        let r1 = robin_roots(1, 1.0, 1).unwrap()[0];
        let p = PerturbationParams::from_mu(16, 1.0, 0.0).unwrap();
        assert!(eigenvalue_gap(&r0, &r0, &p).is_err());
        assert!(matches!(eigenvalue_gap(&r0, &r1, &p), Err(Error::NotDegenerate(..))));
    }
}
