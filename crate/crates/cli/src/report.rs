//! Documents written by the subcommands. Each carries `schema_version` and
//! `command`; the matching JSON Schema lives in `schemas/<command>.schema.json`.

use altbc::boundary_layer::CompositeField;
use altbc::{AsymptoticEigenvalue, DegeneracyCertificate, LimitingEigenvalue};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitingReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(rename = "A")]
    pub a: f64,
    pub lambda_max: f64,
    pub eigenvalues: Vec<LimitingEigenvalue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymReport {
    pub schema_version: u32,
    pub command: String,
    pub series: AsymptoticEigenvalue,
    pub lambda3_negative: bool,
    pub lambda4_positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerateReport {
    pub schema_version: u32,
    pub command: String,
    pub certificate: DegeneracyCertificate,
    /// Residuals of the Robin equation recomputed from the certificate.
    pub recheck_residual_n: f64,
    pub recheck_residual_m: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub schema_version: u32,
    pub command: String,
    pub field: CompositeField,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, measured: f64, expected: f64, tol: f64) -> Self {
        let error = (measured - expected).abs();
        Self { name: name.into(), measured, expected, error, tol, pass: error <= tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerCheckReport {
    pub schema_version: u32,
    pub command: String,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MuScheme {
    /// mu = 0 at every N.
    Zero,
    /// mu = c eps.
    Linear { c: f64 },
    /// eta held fixed, so A + mu = -1/(eps ln eta).
    EtaConst { eta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    #[serde(rename = "A")]
    pub a: f64,
    pub n: u32,
    pub k: u32,
    #[serde(rename = "N_list")]
    pub n_list: Vec<u32>,
    pub mu_scheme: MuScheme,
    pub seed: u64,
    pub sigma_threshold: f64,
}

/// Values indexed by series order 0, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ByOrder {
    pub order0: f64,
    pub order3: f64,
    pub order4: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    #[serde(rename = "N")]
    pub n_arcs: u32,
    pub epsilon: f64,
    pub mu: f64,
    pub lambda_direct: Option<f64>,
    pub sigma_min: Option<f64>,
    pub lambda_asym_by_order: Option<ByOrder>,
    /// |lambda_direct - lambda_asym| per order.
    pub errors_by_order: Option<ByOrder>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slopes {
    pub order0: Option<f64>,
    pub order3: Option<f64>,
    pub order4: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub altbc_version: String,
    pub cli_version: String,
    pub solver_j: usize,
    pub solver_mb: usize,
    pub solver_mi: usize,
    pub lambda_rtol: f64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub schema_version: u32,
    pub command: String,
    pub config: StudyConfig,
    pub rows: Vec<StudyRow>,
    /// Least-squares slopes of log error against log eps over successful rows.
    pub fitted_slopes: Slopes,
    pub failed_rows: usize,
    pub metadata: Metadata,
}

/// Least-squares slope of ln y against ln x; `None` with fewer than two
/// usable points.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        xs.iter().zip(ys).filter(|(x, y)| **x > 0.0 && **y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}
