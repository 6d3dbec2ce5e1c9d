//! Command-line frontend for the `altbc` library.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage error.

pub mod args;
pub mod config;
pub mod report;

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, Write};
use std::time::Instant;

use altbc::asymptotics::MU_WINDOW;
use altbc::boundary_layer::{
    a_k_on_axis, composite_field, v_i, w, x, x_partials, CorrectorParams, InnerPoint, Parity, PolarGrid,
    StretchedPoint, Y,
};
use altbc::limiting::robin_residual;
use altbc::specfun::ZETA3;
use altbc::*;
use rayon::prelude::*;

use args::*;
use report::*;

#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments; exit code 2.
    Usage(String),
    /// The computation failed; exit code 1.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = format!("{}: {e}", e.name());
        if e.is_usage() {
            CliError::Usage(msg)
        } else {
            CliError::Numerical(msg)
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Finished output of one subcommand.
pub struct Output {
    pub body: String,
    /// Set when the document was written but a check inside it failed.
    pub failure: Option<CliError>,
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types serialize");
    s.push('\n');
    s
}

fn finite(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("{name} = {v} is not finite")))
    }
}

fn nth_root(n: u32, a: f64, k: u32) -> CliResult<RobinRoot> {
    if k == 0 || k > 50 {
        return Err(usage(format!("root index k = {k} outside 1..=50")));
    }
    Ok(robin_roots(n, a, k as usize)?[k as usize - 1])
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let format = cli.common.format.unwrap_or(match cli.command {
        Command::Field(_) => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && !matches!(cli.command, Command::Field(_)) {
        return Err(usage("--format csv is only available for `field`"));
    }
    if let Some(t) = cli.common.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(usage(format!("--tol {t} must be positive")));
        }
    }
    match &cli.command {
        Command::Limiting(a) => cmd_limiting(a),
        Command::Asym(a) => cmd_asym(a),
        Command::Converge(a) => cmd_converge(a, &cli.common),
        Command::DegenerateA(a) => cmd_degenerate(a, &cli.common),
        Command::Field(a) => cmd_field(a, format),
        Command::LayerCheck => cmd_layer_check(&cli.common),
    }
}

/// Writes to `--out` or standard output.
pub fn emit(cli: &Cli, body: &str) -> CliResult<()> {
    let res = match &cli.common.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(body.as_bytes())),
        None => io::stdout().lock().write_all(body.as_bytes()),
    };
    res.map_err(|e| usage(format!("cannot write output: {e}")))
}

pub fn cmd_limiting(a: &LimitingArgs) -> CliResult<Output> {
    finite("A", a.a)?;
    finite("lambda-max", a.lambda_max)?;
    let eigenvalues = limiting_spectrum(a.a, a.lambda_max)?;
    let doc = LimitingReport {
        schema_version: SCHEMA_VERSION,
        command: "limiting".into(),
        a: a.a,
        lambda_max: a.lambda_max,
        eigenvalues,
    };
    Ok(Output { body: json(&doc), failure: None })
}

pub fn cmd_asym(a: &AsymArgs) -> CliResult<Output> {
    let g = &a.geometry;
    finite("A", g.a)?;
    let params = params_from_geometry(g.n_arcs, g.eta, g.a)?;
    if params.mu.abs() > MU_WINDOW {
        return Err(usage(format!("mu = {} from eta = {} lies outside |mu| <= {MU_WINDOW}", params.mu, g.eta)));
    }
    let root = nth_root(a.n, g.a, a.k)?;
    let series = eigenvalue_series(&root, &params, a.order)?;
    let doc = AsymReport {
        schema_version: SCHEMA_VERSION,
        command: "asym".into(),
        lambda3_negative: series.lambda3 < 0.0,
        lambda4_positive: series.lambda4 > 0.0,
        series,
    };
    Ok(Output { body: json(&doc), failure: None })
}

/// Folds a Bessel order into its Bloch class 0..=N/2.
fn class_residue(n: u32, n_arcs: u32) -> u32 {
    let r = n % n_arcs;
    r.min(n_arcs - r)
}

fn scheme_mu(scheme: MuScheme, n_arcs: u32, a: f64) -> f64 {
    let eps = 2.0 / n_arcs as f64;
    match scheme {
        MuScheme::Zero => 0.0,
        MuScheme::Linear { c } => c * eps,
        MuScheme::EtaConst { eta } => -1.0 / (eps * eta.ln()) - a,
    }
}

fn study_params(scheme: MuScheme, n_arcs: u32, a: f64) -> altbc::Result<PerturbationParams> {
    match scheme {
        MuScheme::Zero => PerturbationParams::from_mu(n_arcs, a, 0.0),
        MuScheme::Linear { c } => PerturbationParams::from_mu(n_arcs, a, c * 2.0 / n_arcs as f64),
        MuScheme::EtaConst { eta } => params_from_geometry(n_arcs, eta, a),
    }
}

fn study_row(cfg: &StudyConfig, root: &RobinRoot, neighbours: (f64, f64), n_arcs: u32) -> StudyRow {
    let epsilon = 2.0 / n_arcs as f64;
    let mut row = StudyRow {
        n_arcs,
        epsilon,
        mu: scheme_mu(cfg.mu_scheme, n_arcs, cfg.a),
        lambda_direct: None,
        sigma_min: None,
        lambda_asym_by_order: None,
        errors_by_order: None,
        failure: None,
    };
    let params = match study_params(cfg.mu_scheme, n_arcs, cfg.a) {
        Ok(p) => p,
        Err(e) => {
            row.failure = Some(format!("{}: {e}", e.name()));
            return row;
        }
    };
    let series = |o| eigenvalue_series(root, &params, o);
    let (s0, s3, s4) = match (series(0), series(3), series(4)) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => {
            row.failure = Some(format!("{}: {e}", e.name()));
            return row;
        }
    };
    row.lambda_asym_by_order = Some(ByOrder { order0: s0.value, order3: s3.value, order4: s4.value });

    // bracket: a tenth of Lambda0 plus the size of the eps^3 term, kept clear
    // of the neighbouring roots of the same order
    let l0 = s4.lambda0;
    let mut half = 0.1 * l0 + 10.0 * epsilon.powi(3) * s4.lambda3.abs();
    half = half.min(0.45 * (l0 - neighbours.0)).min(0.45 * (neighbours.1 - l0));
    let bracket = ((s4.value - half).max(1e-3 * half), s4.value + half);

    let class = SymmetryClass::even(class_residue(root.n, n_arcs));
    let mut sc = SolverConfig::new(params, class, bracket);
    sc.seed = cfg.seed;
    sc.sigma_threshold = cfg.sigma_threshold;
    match find_eigenvalue(&sc) {
        Ok(d) => {
            row.lambda_direct = Some(d.lambda);
            row.sigma_min = Some(d.sigma_min);
            row.errors_by_order = Some(ByOrder {
                order0: (d.lambda - s0.value).abs(),
                order3: (d.lambda - s3.value).abs(),
                order4: (d.lambda - s4.value).abs(),
            });
        }
        Err(e) => row.failure = Some(format!("{}: {e}", e.name())),
    }
    row
}

pub fn cmd_converge(a: &ConvergeArgs, common: &Common) -> CliResult<Output> {
    finite("A", a.a)?;
    if a.a < 0.0 {
        return Err(usage(format!("A = {} must be >= 0", a.a)));
    }
    if a.n_list.len() < 3 {
        return Err(usage("N-list needs at least three entries"));
    }
    if a.n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("N-list must be strictly ascending"));
    }
    if let Some(bad) = a.n_list.iter().find(|&&n| n < 4 || n % 2 != 0) {
        return Err(usage(format!("N = {bad} must be even and >= 4")));
    }
    let mu_scheme = match a.mu_scheme {
        MuSchemeArg::Zero => MuScheme::Zero,
        MuSchemeArg::Linear => {
            let c = a.c.ok_or_else(|| usage("mu=c*eps needs --c"))?;
            finite("c", c)?;
            MuScheme::Linear { c }
        }
        MuSchemeArg::EtaConst => {
            let eta = a.eta.ok_or_else(|| usage("eta=const needs --eta"))?;
            if !(eta > 0.0 && eta < 1.0) {
                return Err(usage(format!("eta = {eta} must lie in (0, 1)")));
            }
            MuScheme::EtaConst { eta }
        }
    };
    let defaults = SolverConfig::new(PerturbationParams::from_mu(8, 1.0, 0.0)?, SymmetryClass::even(0), (1.0, 2.0));
    let cfg = StudyConfig {
        a: a.a,
        n: a.n,
        k: a.k,
        n_list: a.n_list.clone(),
        mu_scheme,
        seed: common.seed.unwrap_or(defaults.seed),
        sigma_threshold: common.tol.unwrap_or(defaults.sigma_threshold),
    };

    let start = Instant::now();
    let roots = robin_roots(a.n, a.a, a.k as usize + 1)?;
    let k = a.k as usize;
    if k == 0 {
        return Err(usage("root index k starts at 1"));
    }
    let root = roots[k - 1];
    let lower = if k >= 2 { roots[k - 2].lambda0 } else { 0.0 };
    let neighbours = (lower, roots[k].lambda0);
    // rows run concurrently; collect keeps the N order
    let rows: Vec<StudyRow> = cfg.n_list.par_iter().map(|&n| study_row(&cfg, &root, neighbours, n)).collect();

    let ok: Vec<&StudyRow> = rows.iter().filter(|r| r.errors_by_order.is_some()).collect();
    let eps: Vec<f64> = ok.iter().map(|r| r.epsilon).collect();
    let col =
        |f: fn(&ByOrder) -> f64| -> Vec<f64> { ok.iter().map(|r| f(r.errors_by_order.as_ref().unwrap())).collect() };
    let fitted_slopes = Slopes {
        order0: log_log_slope(&eps, &col(|b| b.order0)),
        order3: log_log_slope(&eps, &col(|b| b.order3)),
        order4: log_log_slope(&eps, &col(|b| b.order4)),
    };
    let failed_rows = rows.len() - ok.len();
    let doc = StudyReport {
        schema_version: SCHEMA_VERSION,
        command: "converge".into(),
        config: cfg,
        rows,
        fitted_slopes,
        failed_rows,
        metadata: Metadata {
            altbc_version: altbc::VERSION.into(),
            cli_version: env!("CARGO_PKG_VERSION").into(),
            solver_j: defaults.j,
            solver_mb: defaults.mb,
            solver_mi: defaults.mi,
            lambda_rtol: defaults.lambda_rtol,
            wall_time_s: start.elapsed().as_secs_f64(),
        },
    };
    let failure = (2 * failed_rows > doc.rows.len())
        .then(|| CliError::Numerical(format!("{failed_rows} of {} rows failed", doc.rows.len())));
    Ok(Output { body: json(&doc), failure })
}

pub fn cmd_degenerate(a: &DegenerateArgs, common: &Common) -> CliResult<Output> {
    finite("t-lo", a.t_lo)?;
    finite("t-hi", a.t_hi)?;
    if a.n == a.m {
        return Err(usage("n and m must differ"));
    }
    let tol = common.tol.unwrap_or(1e-9);
    let certificate =
        degenerate_a(a.n, a.m, (a.t_lo, a.t_hi)).map_err(|e| CliError::Numerical(format!("{}: {e}", e.name())))?;
    let rn = robin_residual(certificate.n, certificate.a, certificate.t0);
    let rm = robin_residual(certificate.m, certificate.a, certificate.t0);
    let doc = DegenerateReport {
        schema_version: SCHEMA_VERSION,
        command: "degenerate-a".into(),
        certificate,
        recheck_residual_n: rn,
        recheck_residual_m: rm,
        tol,
    };
    let failure = (rn.abs() > tol || rm.abs() > tol)
        .then(|| CliError::Numerical(format!("re-check residuals {rn:e}, {rm:e} exceed {tol:e}")));
    Ok(Output { body: json(&doc), failure })
}

pub fn cmd_field(a: &FieldArgs, format: Format) -> CliResult<Output> {
    let g = &a.geometry;
    finite("A", g.a)?;
    let grid = PolarGrid::uniform(a.nr, a.r_min, a.r_max, a.ntheta)?;
    let params = params_from_geometry(g.n_arcs, g.eta, g.a)?;
    let root = nth_root(a.n, g.a, a.k)?;
    let parity: Parity = a.parity.map(Into::into).unwrap_or(if a.n == 0 { Parity::Radial } else { Parity::Cos });
    let field = composite_field(&root, &params, parity, a.order, &grid)?;
    let body = match format {
        Format::Json => json(&FieldReport { schema_version: SCHEMA_VERSION, command: "field".into(), field }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["r", "theta", "value"]).map_err(|e| CliError::Numerical(e.to_string()))?;
            for s in &field.samples {
                w.serialize((s.r, s.theta, s.value)).map_err(|e| CliError::Numerical(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Numerical(e.to_string()))?).expect("csv is utf-8")
        }
    };
    Ok(Output { body, failure: None })
}

fn sp(a: f64, b: f64) -> StretchedPoint {
    StretchedPoint::new(a, b).expect("check points have xi2 >= 0")
}

pub fn layer_checks(tol: f64) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    let a1 = a_k_on_axis(1, |t| x(sp(0.0, t)).unwrap_or(0.0), 0.0)?;
    checks.push(Check::new("A1[X](0) = -zeta(3)/4", a1, -ZETA3 / 4.0, tol));
    let a2 = a_k_on_axis(1, |t| t * x(sp(0.0, t)).unwrap_or(0.0), 0.0)?;
    checks.push(Check::new("A1[xi2 X](0) = -pi^4/360", a2, -PI.powi(4) / 360.0, tol));

    let pts: Vec<(f64, f64)> = (0..24).map(|i| (-3.0 + 0.27 * i as f64, 0.1 + 0.11 * i as f64)).collect();
    let mut lap = 0.0f64;
    let mut lap_fd = 0.0f64;
    let f = |s: f64, t: f64| x(sp(s, t)).unwrap_or(f64::NAN);
    let stencil =
        |a: f64, b: f64, h: f64| (f(a + h, b) + f(a - h, b) + f(a, b + h) + f(a, b - h) - 4.0 * f(a, b)) / (h * h);
    for &(a, b) in &pts {
        lap = lap.max((x_partials(sp(a, b), 2, 0)? + x_partials(sp(a, b), 0, 2)?).abs());
        // Richardson step removes the h^2 truncation term
        let l = (4.0 * stencil(a, b, 1e-3) - stencil(a, b, 2e-3)) / 3.0;
        lap_fd = lap_fd.max(l.abs());
    }
    checks.push(Check::new("X harmonic (analytic partials)", lap, 0.0, 1e-10));
    checks.push(Check::new("X harmonic (five-point stencil)", lap_fd, 0.0, 1e-8));

    let mut neu = 0.0f64;
    let mut per = 0.0f64;
    for i in 1..20 {
        let a = PI * i as f64 / 20.0;
        neu = neu.max((x_partials(sp(a, 0.0), 0, 1)? + 1.0).abs());
        per = per.max((x(sp(a, 0.3))? - x(sp(a + PI, 0.3))?).abs());
    }
    checks.push(Check::new("dX/dxi2 = -1 on the gaps", neu, 0.0, 1e-12));
    checks.push(Check::new("X pi-periodic in xi1", per, 0.0, 1e-12));
    checks.push(Check::new("X decays into the interior", x(sp(0.0, 20.0))?, 0.0, 1e-15));

    let c = CorrectorParams::new(1, 2.0, 0.37);
    let hv = 1e-4;
    let f = |t: f64| v_i(1, sp(PI / 2.0, t), &c);
    let flux = (-3.0 * f(0.0)? + 4.0 * f(hv)? - f(2.0 * hv)?) / (2.0 * hv);
    checks.push(Check::new("v1 flux equals alpha1 on the gap", flux, 0.37, 1e-6));

    let ip = |s: f64, t: f64| InnerPoint::new(s, t);
    let mut dir = 0.0f64;
    let mut yn = 0.0f64;
    for s in [-0.9, -0.3, 0.2, 0.8] {
        dir = dir.max(w(1, 0, ip(s, 0.0)?, 1.3)?.abs());
    }
    for s in [-4.0, -1.5, 1.2, 3.0] {
        let g = |t: f64| Y(ip(s, t).expect("sigma2 >= 0"));
        yn = yn.max(((-3.0 * g(0.0) + 4.0 * g(hv) - g(2.0 * hv)) / (2.0 * hv)).abs());
    }
    checks.push(Check::new("w_1,0 vanishes on the arc", dir, 0.0, 1e-15));
    checks.push(Check::new("dY/dsigma2 vanishes off the arc", yn, 0.0, 1e-6));
    Ok(checks)
}

pub fn cmd_layer_check(common: &Common) -> CliResult<Output> {
    let checks = layer_checks(common.tol.unwrap_or(1e-8))?;
    let all_pass = checks.iter().all(|c| c.pass);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let failure = (!all_pass).then(|| CliError::Numerical(format!("failed checks: {}", failed.join("; "))));
    let doc = LayerCheckReport { schema_version: SCHEMA_VERSION, command: "layer-check".into(), checks, all_pass };
    Ok(Output { body: json(&doc), failure })
}
