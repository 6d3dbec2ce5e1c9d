//! Direct eigenvalue solver for the disk with alternating boundary conditions.
//!
//! Candidates lambda are scored by the smallest singular value of the
//! boundary block of an orthonormalized [boundary; interior] collocation
//! matrix (interior rows keep the score from dipping where every basis
//! function is small). Eigenvalues are the dips.
//!
//! The alternating layout is discretized by an arc-flux representation (see
//! `kernel`): the unknown is the Neumann flux on the Dirichlet arcs, expanded
//! in T_n(s/delta) / sqrt(delta^2 - s^2), which carries the square-root
//! behaviour at the junctions exactly. The two degenerate layouts use the
//! classic J_k(x r) {cos, sin}(k theta) basis.

mod kernel;
mod modal;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::asymptotics::PerturbationParams;
use crate::error::{Error, Result};
use kernel::{ArcTables, InteriorEval, Part, Unknown};

pub use modal::MIN_COLUMN_NORM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    /// N Dirichlet arcs of half-width eps * eta centred at 2 pi m / N.
    Alternating,
    AllDirichlet,
    AllNeumann,
}

/// Reflection parity under theta -> -theta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reflection {
    /// cos-like
    Even,
    /// sin-like
    Odd,
}

/// Fourier indices k = +-residue (mod N) with one reflection parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryClass {
    pub residue: u32,
    pub reflection: Reflection,
}

impl SymmetryClass {
    pub fn even(residue: u32) -> Self {
        Self { residue, reflection: Reflection::Even }
    }
    pub fn odd(residue: u32) -> Self {
        Self { residue, reflection: Reflection::Odd }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub params: PerturbationParams,
    pub class: SymmetryClass,
    pub layout: Layout,
    /// Basis functions per density (alternating) or modal columns (degenerate).
    #[serde(rename = "J")]
    pub j: usize,
    /// Boundary rows.
    #[serde(rename = "Mb")]
    pub mb: usize,
    /// Interior normalization rows.
    #[serde(rename = "Mi")]
    pub mi: usize,
    /// Gauss-Chebyshev nodes for the smooth kernel part.
    pub quad_nodes: usize,
    /// Truncation of the spectral kernel remainder.
    pub k_max: u64,
    pub lambda_bracket: (f64, f64),
    pub sigma_threshold: f64,
    pub seed: u64,
    pub scan_samples: usize,
    pub lambda_rtol: f64,
}

impl SolverConfig {
    pub fn new(params: PerturbationParams, class: SymmetryClass, lambda_bracket: (f64, f64)) -> Self {
        Self {
            params,
            class,
            layout: Layout::Alternating,
            j: 3,
            mb: 12,
            mi: 20,
            quad_nodes: 32,
            k_max: 200_000,
            lambda_bracket,
            sigma_threshold: 1e-8,
            seed: 0x5eed,
            scan_samples: 48,
            lambda_rtol: 1e-12,
        }
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.params.n_arcs;
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.class.residue >= n {
            return bad(format!("residue {} must be < N = {n}", self.class.residue));
        }
        if self.j == 0 {
            return bad("J must be positive".into());
        }
        if self.mb < 4 * self.j {
            return bad(format!("Mb = {} must be >= 4 J = {}", self.mb, 4 * self.j));
        }
        if self.layout == Layout::Alternating && !self.self_conjugate() && !self.mb.is_multiple_of(2) {
            return bad(format!("Mb = {} must be even for a complex class", self.mb));
        }
        if self.mi == 0 || self.quad_nodes < 8 || self.k_max < n as u64 {
            return bad("Mi >= 1, quad_nodes >= 8 and k_max >= N required".into());
        }
        let (lo, hi) = self.lambda_bracket;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return bad(format!("lambda bracket ({lo}, {hi}) must satisfy 0 < lo < hi"));
        }
        if !(self.sigma_threshold > 0.0) || !(self.lambda_rtol > 0.0) {
            return bad("sigma_threshold and lambda_rtol must be positive".into());
        }
        if self.scan_samples < 8 {
            return bad("scan_samples must be >= 8".into());
        }
        Ok(())
    }

    fn self_conjugate(&self) -> bool {
        let r = self.class.residue;
        r == 0 || 2 * r == self.params.n_arcs
    }

    fn odd(&self) -> bool {
        self.class.reflection == Reflection::Odd
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assembly {
    /// Boundary rows first, then interior rows.
    pub matrix: DMatrix<f64>,
    pub boundary_rows: usize,
    pub interior_rows: usize,
    /// Columns removed because their norm underflowed.
    pub dropped_columns: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectEigenResult {
    pub lambda: f64,
    pub sigma_min: f64,
    pub coeffs: Vec<f64>,
    /// max |u| on boundary check points over max |u| on interior points.
    pub boundary_residual: f64,
    pub dropped_columns: Vec<usize>,
    pub config: SolverConfig,
}

#[allow(clippy::large_enum_variant)]
enum Prepared {
    Arc { tables: ArcTables, interior: InteriorEval, unknowns: Vec<Unknown> },
    Modal { orders: Vec<u32>, neumann: bool },
}

/// Precomputed, lambda-independent discretization.
pub struct Solver {
    config: SolverConfig,
    prepared: Prepared,
    interior_points: Vec<(f64, f64)>,
}

fn collocation_points(delta: f64, count: usize) -> Vec<f64> {
    (0..count).map(|a| delta * (PI * (2 * a + 1) as f64 / (4 * count) as f64).cos()).collect()
}

fn modal_points(n_arcs: u32, count: usize) -> Vec<f64> {
    let sector = 2.0 * PI / n_arcs as f64;
    (0..count).map(|i| sector * (i as f64 + 0.5) / count as f64).collect()
}

/// Shifted Kronecker (R2) sequence on the disk r <= 0.7; the shift comes from the seed.
fn interior_points(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let g = 1.324_717_957_244_746_f64;
    let (a1, a2) = (1.0 / g, 1.0 / (g * g));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (s1, s2): (f64, f64) = (rng.random(), rng.random());
    (1..=count)
        .map(|i| {
            let u = (s1 + i as f64 * a1).fract();
            let v = (s2 + i as f64 * a2).fract();
            (0.7 * u.sqrt(), 2.0 * PI * v)
        })
        .collect()
}

fn arc_unknowns(j: usize, self_conj: bool, odd: bool) -> Vec<Unknown> {
    // cos-like: E even in s, O odd; sin-like: the reverse
    let e_shift = usize::from(odd);
    let mut u: Vec<Unknown> = (0..j).map(|i| Unknown { part: Part::E, deg: 2 * i + e_shift }).collect();
    if !self_conj {
        u.extend((0..j).map(|i| Unknown { part: Part::O, deg: 2 * i + 1 - e_shift }));
    }
    u
}

impl Solver {
    pub fn new(config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let p = &config.params;
        let interior_points = interior_points(config.mi, config.seed);
        let prepared = match config.layout {
            Layout::Alternating => {
                let delta = p.half_width();
                let self_conj = config.self_conjugate();
                let npts = if self_conj { config.mb } else { config.mb / 2 };
                let pts = collocation_points(delta, npts);
                let tables = ArcTables::new(
                    p.n_arcs,
                    config.class.residue,
                    delta,
                    2 * config.j,
                    &pts,
                    config.quad_nodes,
                    config.k_max,
                );
                let unknowns = arc_unknowns(config.j, self_conj, config.odd());
                let interior = InteriorEval::new(p.n_arcs, config.class.residue, delta);
                Prepared::Arc { tables, interior, unknowns }
            }
            Layout::AllDirichlet | Layout::AllNeumann => {
                let orders = modal::class_orders(p.n_arcs, config.class.residue, config.odd(), config.j);
                Prepared::Modal { orders, neumann: config.layout == Layout::AllNeumann }
            }
        };
        Ok(Self { config, prepared, interior_points })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn check_lambda(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidInput(format!("lambda = {lambda} must be positive")));
        }
        Ok(lambda.sqrt())
    }

    fn interior_rows(&self, x: f64) -> Vec<Vec<f64>> {
        let odd = self.config.odd();
        self.interior_points
            .iter()
            .map(|&(rho, th)| match &self.prepared {
                Prepared::Arc { interior, unknowns, .. } => interior.row(x, rho, th, unknowns),
                Prepared::Modal { orders, .. } => modal::interior_row(orders, x, rho, th, odd),
            })
            .collect()
    }

    fn boundary_rows(&self, x: f64) -> Vec<Vec<f64>> {
        match &self.prepared {
            Prepared::Arc { tables, unknowns, .. } => tables.boundary_rows(x, unknowns),
            Prepared::Modal { orders, neumann } => {
                let odd = self.config.odd();
                modal_points(self.config.params.n_arcs, self.config.mb)
                    .into_iter()
                    .map(|th| modal::boundary_row(orders, x, th, odd, *neumann))
                    .collect()
            }
        }
    }

    /// (Mb + Mi) x ncols collocation matrix at lambda.
    pub fn assemble(&self, lambda: f64) -> Result<Assembly> {
        let x = self.check_lambda(lambda)?;
        let b = self.boundary_rows(x);
        let i = self.interior_rows(x);
        let ncols = b.first().map_or(0, |r| r.len());
        let rows: Vec<&Vec<f64>> = b.iter().chain(i.iter()).collect();
        let full = DMatrix::from_fn(rows.len(), ncols, |r, c| rows[r][c]);
        let mut dropped = Vec::new();
        let mut kept = Vec::new();
        for c in 0..ncols {
            let norm = full.column(c).norm();
            if norm < MIN_COLUMN_NORM || !norm.is_finite() {
                dropped.push(c);
            } else {
                kept.push(c);
            }
        }
        if kept.is_empty() {
            return Err(Error::IllConditioned);
        }
        let matrix = full.select_columns(kept.iter());
        Ok(Assembly { matrix, boundary_rows: b.len(), interior_rows: i.len(), dropped_columns: dropped })
    }

    /// Normalized smallest singular value and its coefficient vector.
    fn sigma_and_vector(&self, lambda: f64) -> Result<(f64, DVector<f64>, Assembly)> {
        let asm = self.assemble(lambda)?;
        let ncols = asm.matrix.ncols();
        let qr = asm.matrix.clone().qr();
        let q = qr.q();
        let qb = q.rows(0, asm.boundary_rows).into_owned();
        let svd = qb.svd(false, true);
        let (imin, smin) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, s)| (i, *s))
            .ok_or(Error::IllConditioned)?;
        let vt = svd.v_t.ok_or(Error::IllConditioned)?;
        let v = vt.row(imin).transpose();
        let c = qr.r().solve_upper_triangular(&v).unwrap_or_else(|| DVector::zeros(ncols));
        Ok((smin, c, asm))
    }

    pub fn sigma(&self, lambda: f64) -> Result<f64> {
        Ok(self.sigma_and_vector(lambda)?.0)
    }

    /// sigma on a uniform grid over the bracket.
    pub fn scan(&self, samples: usize) -> Result<Vec<(f64, f64)>> {
        if samples < 8 {
            return Err(Error::InvalidInput(format!("samples = {samples} must be >= 8")));
        }
        let (lo, hi) = self.config.lambda_bracket;
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let l = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                Ok((l, self.sigma(l)?))
            })
            .collect()
    }

    fn golden(&self, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
        let invphi = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - invphi * (b - a);
        let mut d = a + invphi * (b - a);
        let mut fc = self.sigma(c)?;
        let mut fd = self.sigma(d)?;
        for _ in 0..200 {
            if (b - a).abs() <= self.config.lambda_rtol * 0.5 * (a + b).abs() {
                break;
            }
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = self.sigma(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = self.sigma(d)?;
            }
        }
        Ok(if fc < fd { (c, fc) } else { (d, fd) })
    }

    /// Locate the single dip of sigma in the bracket.
    pub fn find_eigenvalue(&self) -> Result<DirectEigenResult> {
        let grid = self.scan(self.config.scan_samples)?;
        let n = grid.len();
        let mut candidates = Vec::new();
        for i in 0..n {
            let left = if i > 0 { grid[i - 1].1 } else { f64::INFINITY };
            let right = if i + 1 < n { grid[i + 1].1 } else { f64::INFINITY };
            if grid[i].1 <= left && grid[i].1 <= right {
                candidates.push(i);
            }
        }
        let refined: Vec<(f64, f64)> = candidates
            .par_iter()
            .map(|&i| {
                let a = grid[i.saturating_sub(1)].0;
                let b = grid[(i + 1).min(n - 1)].0;
                self.golden(a, b)
            })
            .collect::<Result<_>>()?;
        let thr = self.config.sigma_threshold;
        let dips: Vec<&(f64, f64)> = refined.iter().filter(|r| r.1 <= thr).collect();
        match dips.len() {
            0 => {
                let best = refined.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
                Err(Error::NoDip(best))
            }
            1 => self.result_at(dips[0].0),
            k => Err(Error::MultipleDips(k)),
        }
    }

    fn result_at(&self, lambda: f64) -> Result<DirectEigenResult> {
        let (sigma_min, c, asm) = self.sigma_and_vector(lambda)?;
        let x = lambda.sqrt();
        let interior = asm.matrix.rows(asm.boundary_rows, asm.interior_rows) * &c;
        let scale = interior.amax();
        let boundary_residual = self.check_residual(x, &c, &asm.dropped_columns)? / scale;
        Ok(DirectEigenResult {
            lambda,
            sigma_min,
            coeffs: c.iter().copied().collect(),
            boundary_residual,
            dropped_columns: asm.dropped_columns,
            config: self.config.clone(),
        })
    }

    /// max |u| (or |du/dr|) at boundary points distinct from the collocation set.
    fn check_residual(&self, x: f64, c: &DVector<f64>, dropped: &[usize]) -> Result<f64> {
        let rows = match &self.prepared {
            Prepared::Arc { tables, unknowns, .. } => {
                let count = 3 * self.config.mb + 1;
                let pts = collocation_points(tables.delta(), count);
                let p = &self.config.params;
                let check = ArcTables::new(
                    p.n_arcs,
                    tables.residue(),
                    tables.delta(),
                    2 * self.config.j,
                    &pts,
                    self.config.quad_nodes,
                    self.config.k_max,
                );
                check.boundary_rows(x, unknowns)
            }
            Prepared::Modal { orders, neumann } => {
                // midpoints between the collocation angles
                let sector = 2.0 * PI / self.config.params.n_arcs as f64;
                let m = self.config.mb;
                (0..m)
                    .map(|i| {
                        let th = sector * (i as f64 + 1.0) / m as f64;
                        modal::boundary_row(orders, x, th, self.config.odd(), *neumann)
                    })
                    .collect()
            }
        };
        let mut worst = 0.0f64;
        for row in rows {
            let kept = row.iter().enumerate().filter(|(i, _)| !dropped.contains(i)).map(|(_, v)| *v);
            let v: f64 = kept.zip(c.iter()).map(|(a, b)| a * b).sum();
            worst = worst.max(v.abs());
        }
        Ok(worst)
    }
}

/// Collocation matrix at lambda (builds the discretization each call).
pub fn assemble(config: &SolverConfig, lambda: f64) -> Result<Assembly> {
    Solver::new(config.clone())?.assemble(lambda)
}

/// Normalized smallest singular value on a uniform lambda grid.
pub fn sigma_min_scan(config: &SolverConfig, samples: usize) -> Result<Vec<(f64, f64)>> {
    Solver::new(config.clone())?.scan(samples)
}

pub fn find_eigenvalue(config: &SolverConfig) -> Result<DirectEigenResult> {
    Solver::new(config.clone())?.find_eigenvalue()
}
