//! Alternating layout: the unknown is the Neumann flux g on the Dirichlet
//! arcs, u = int G_lambda g with the Neumann Green's function of the disk, so
//! the PDE and the Neumann condition on the gaps hold exactly and only u = 0
//! on the arcs is collocated.
//!
//! Within a Bloch class r (g on arc m equals e^{i r theta_m} g on arc 0) the
//! boundary trace on arc 0 is int K_r(t - s) g(s) ds with
//!   K_r(tau) = (N / 2 pi) sum_{k = r mod N} h_|k| e^{i k tau} = C(tau) + i S(tau),
//!   h_k = J_k(x) / (x J_k'(x)),  x = sqrt(lambda).
//! C carries the log singularity -(1/pi) ln|tau| of the m = 0 arc; it is
//! integrated exactly against T_n(s/delta) / sqrt(delta^2 - s^2). The rest of
//! the singular part is smooth on the arc (Gauss-Chebyshev), and the
//! remainder d_k = c_k - (N / 2 pi) m_r / k ~ k^-3 is summed spectrally with
//! int e^{iks} T_n(s/delta) / sqrt(delta^2 - s^2) ds = pi i^n J_n(k delta).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::specfun::j_unchecked;

/// Real and imaginary parts of the density g = E + iO.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Part {
    E,
    O,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Unknown {
    pub part: Part,
    /// Chebyshev degree of T_deg(s/delta) / sqrt(delta^2 - s^2).
    pub deg: usize,
}

/// lambda-independent part of the discretization.
pub(crate) struct ArcTables {
    n_arcs: u32,
    residue: u32,
    self_conjugate: bool,
    delta: f64,
    /// class indices k >= 0, ascending
    ks: Vec<u64>,
    /// +1 for k = r, -1 for k = -r (mod N)
    signs: Vec<f64>,
    max_deg: usize,
    /// pi (-1)^{floor(n/2)} J_n(k delta) per class index
    bessel: Vec<Vec<f64>>,
    points: Vec<f64>,
    cos_kt: Vec<Vec<f64>>,
    sin_kt: Vec<Vec<f64>>,
    /// singular-part integrals, [point][deg]
    sing_c: Vec<Vec<f64>>,
    sing_s: Vec<Vec<f64>>,
}

fn log_sinc(tau: f64) -> f64 {
    // ln|2 sin(tau/2) / tau|
    if tau.abs() < 1e-3 {
        let t2 = tau * tau;
        -t2 / 24.0 - t2 * t2 / 2880.0
    } else {
        (2.0 * (0.5 * tau).sin() / tau).abs().ln()
    }
}

fn chebyshev_t(n: usize, y: f64) -> f64 {
    let (mut a, mut b) = (1.0, y);
    if n == 0 {
        return 1.0;
    }
    for _ in 1..n {
        let c = 2.0 * y * b - a;
        a = b;
        b = c;
    }
    b
}

pub(crate) fn class_indices(n_arcs: u32, residue: u32, kmax: u64) -> (Vec<u64>, Vec<f64>) {
    let n = n_arcs as u64;
    let r = residue as u64 % n;
    let rm = (n - r) % n;
    let mut ks = Vec::new();
    let mut signs = Vec::new();
    let mut base = 0u64;
    while base <= kmax + n {
        let mut cand = vec![(base + r, 1.0)];
        if rm != r {
            cand.push((base + rm, -1.0));
        }
        for (k, s) in cand {
            if k <= kmax {
                ks.push(k);
                signs.push(s);
            }
        }
        base += n;
    }
    let mut idx: Vec<usize> = (0..ks.len()).collect();
    idx.sort_by_key(|&i| ks[i]);
    let ks2: Vec<u64> = idx.iter().map(|&i| ks[i]).collect();
    let s2: Vec<f64> = idx.iter().map(|&i| signs[i]).collect();
    (ks2, s2)
}

impl ArcTables {
    pub fn new(
        n_arcs: u32,
        residue: u32,
        delta: f64,
        max_deg: usize,
        points: &[f64],
        quad_nodes: usize,
        kmax: u64,
    ) -> Self {
        let r = residue % n_arcs;
        let self_conjugate = r == 0 || 2 * r == n_arcs;
        let (ks, signs) = class_indices(n_arcs, r, kmax);

        let bessel: Vec<Vec<f64>> = ks
            .iter()
            .map(|&k| {
                let z = k as f64 * delta;
                (0..=max_deg)
                    .map(|n| {
                        let sgn = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                        PI * sgn * j_unchecked(n as u32, z)
                    })
                    .collect()
            })
            .collect();
        let cos_kt = points.iter().map(|&t| ks.iter().map(|&k| (k as f64 * t).cos()).collect()).collect();
        let sin_kt = points.iter().map(|&t| ks.iter().map(|&k| (k as f64 * t).sin()).collect()).collect();

        // smooth parts of the singular kernels
        let thetas: Vec<f64> = (0..n_arcs).map(|m| 2.0 * PI * m as f64 / n_arcs as f64).collect();
        let f_c = |tau: f64| {
            let mut s = -log_sinc(tau) / PI;
            for &th in thetas.iter().skip(1) {
                let w = (r as f64 * th).cos();
                s -= w * (2.0 * (0.5 * (tau + th)).sin()).abs().ln() / PI;
            }
            s
        };
        let f_s = |tau: f64| {
            let mut s = 0.0;
            for &th in thetas.iter().skip(1) {
                let w = (r as f64 * th).sin();
                if w != 0.0 {
                    s += w * (2.0 * (0.5 * (tau + th)).sin()).abs().ln() / PI;
                }
            }
            s
        };
        let nodes: Vec<f64> =
            (1..=quad_nodes).map(|q| ((2 * q - 1) as f64 * PI / (2 * quad_nodes) as f64).cos()).collect();
        let mut sing_c = Vec::with_capacity(points.len());
        let mut sing_s = Vec::with_capacity(points.len());
        for &t in points {
            let fc: Vec<f64> = nodes.iter().map(|&y| f_c(t - delta * y)).collect();
            let fs: Vec<f64> = if self_conjugate {
                vec![0.0; nodes.len()]
            } else {
                nodes.iter().map(|&y| f_s(t - delta * y)).collect()
            };
            let mut rc = Vec::with_capacity(max_deg + 1);
            let mut rs = Vec::with_capacity(max_deg + 1);
            for n in 0..=max_deg {
                let mut qc = 0.0;
                let mut qs = 0.0;
                for (i, &y) in nodes.iter().enumerate() {
                    let tn = chebyshev_t(n, y);
                    qc += fc[i] * tn;
                    qs += fs[i] * tn;
                }
                let w = PI / quad_nodes as f64;
                // -(1/pi) int ln|t - s| T_n(s/delta) / sqrt(delta^2 - s^2) ds
                let log_part = if n == 0 { -(0.5 * delta).ln() } else { chebyshev_t(n, t / delta) / n as f64 };
                rc.push(log_part + w * qc);
                rs.push(w * qs);
            }
            sing_c.push(rc);
            sing_s.push(rs);
        }

        Self {
            n_arcs,
            residue: r,
            self_conjugate,
            delta,
            ks,
            signs,
            max_deg,
            bessel,
            points: points.to_vec(),
            cos_kt,
            sin_kt,
            sing_c,
            sing_s,
        }
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Remainder coefficients d_k of the class kernel at x = sqrt(lambda).
    fn remainders(&self, x: f64) -> Vec<f64> {
        let kmax = *self.ks.last().unwrap_or(&0);
        let ratios = ratio_table(x, kmax as usize);
        let scale = self.n_arcs as f64 / (2.0 * PI);
        self.ks
            .iter()
            .map(|&k| {
                let mult = if self.self_conjugate && k > 0 { 2.0 } else { 1.0 };
                if k == 0 {
                    mult * scale * (-1.0 / (x * ratios[0]))
                } else {
                    let kf = k as f64;
                    let xr = x * ratios[k as usize];
                    // h_k - 1/k without cancellation
                    mult * scale * xr / (kf * (kf - xr))
                }
            })
            .collect()
    }

    /// (int C(t - s) b_n(s) ds, int S(t - s) b_n(s) ds) for every point and degree.
    pub fn kernel_integrals(&self, x: f64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let d = self.remainders(x);
        let mut ic = self.sing_c.clone();
        let mut is = self.sing_s.clone();
        for a in 0..self.points.len() {
            let (ca, sa) = (&self.cos_kt[a], &self.sin_kt[a]);
            for n in 0..=self.max_deg {
                let even = n % 2 == 0;
                let mut acc_c = 0.0;
                let mut acc_s = 0.0;
                for i in 0..self.ks.len() {
                    let b = d[i] * self.bessel[i][n];
                    // even n: int cos(ks) b_n = b, int sin(ks) b_n = 0; odd n: the reverse
                    if even {
                        acc_c += b * ca[i];
                        acc_s += self.signs[i] * b * sa[i];
                    } else {
                        acc_c += b * sa[i];
                        acc_s -= self.signs[i] * b * ca[i];
                    }
                }
                ic[a][n] += acc_c;
                if !self.self_conjugate {
                    is[a][n] += acc_s;
                }
            }
        }
        (ic, is)
    }

    /// Boundary rows: Re and Im of the trace (Re only for self-conjugate classes).
    pub fn boundary_rows(&self, x: f64, unknowns: &[Unknown]) -> Vec<Vec<f64>> {
        let (ic, is) = self.kernel_integrals(x);
        let mut rows = Vec::new();
        for a in 0..self.points.len() {
            let re: Vec<f64> = unknowns
                .iter()
                .map(|u| match u.part {
                    Part::E => ic[a][u.deg],
                    Part::O => -is[a][u.deg],
                })
                .collect();
            rows.push(re);
            if !self.self_conjugate {
                let im: Vec<f64> = unknowns
                    .iter()
                    .map(|u| match u.part {
                        Part::E => is[a][u.deg],
                        Part::O => ic[a][u.deg],
                    })
                    .collect();
                rows.push(im);
            }
        }
        rows
    }
}

/// R_k = J_{k+1}(x) / J_k(x) for k = 0..=kmax by backward recurrence.
pub(crate) fn ratio_table(x: f64, kmax: usize) -> Vec<f64> {
    let start = kmax + 50 + (2.0 * x) as usize;
    let mut r = x / (2.0 * (start as f64 + 1.0));
    let mut out = vec![0.0; kmax + 1];
    for k in (1..=start).rev() {
        r = 1.0 / (2.0 * k as f64 / x - r);
        if k - 1 <= kmax {
            out[k - 1] = r;
        }
    }
    out
}

/// Interior values of the unit density basis functions for a Bloch class:
/// u = Re (N / 2 pi) sum_{k = r mod N} a_|k|(rho) e^{ik theta} ghat(k),
/// a_k(rho) = J_k(x rho) / (x J_k'(x)), ghat(k) = pi (-i)^n J_n(k delta) for T_n.
pub(crate) struct InteriorEval {
    n_arcs: u32,
    residue: u32,
    delta: f64,
}

impl InteriorEval {
    pub fn new(n_arcs: u32, residue: u32, delta: f64) -> Self {
        Self { n_arcs, residue: residue % n_arcs, delta }
    }

    pub fn row(&self, x: f64, rho: f64, theta: f64, unknowns: &[Unknown]) -> Vec<f64> {
        // rho <= 0.7 makes a_k ~ rho^k negligible past this
        let kmax = 110 + (2.0 * x) as i64;
        let n = self.n_arcs as i64;
        let r = self.residue as i64;
        let scale = self.n_arcs as f64 / (2.0 * PI);
        let i = Complex64::new(0.0, 1.0);
        let mut out = vec![0.0; unknowns.len()];
        for k in (-kmax..=kmax).filter(|k| (k - r).rem_euclid(n) == 0) {
            let ka = k.unsigned_abs() as u32;
            let a = j_unchecked(ka, x * rho) / (x * crate::specfun::jp_unchecked(ka, x));
            if !a.is_finite() || a == 0.0 {
                continue;
            }
            let phase = Complex64::from_polar(1.0, k as f64 * theta);
            let z = ka as f64 * self.delta;
            for (col, u) in unknowns.iter().enumerate() {
                let mut jn = j_unchecked(u.deg as u32, z);
                if k < 0 && u.deg % 2 == 1 {
                    jn = -jn;
                }
                // (-i)^deg = i^(3 deg)
                let mut f = i.powu(3 * u.deg as u32 % 4) * (PI * jn);
                if u.part == Part::O {
                    f *= i;
                }
                out[col] += scale * a * (phase * f).re;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios_match_bessel() {
        let x = 3.7;
        let r = ratio_table(x, 30);
        for k in [0usize, 1, 5, 12, 30] {
            let e = j_unchecked(k as u32 + 1, x) / j_unchecked(k as u32, x);
            assert!((r[k] - e).abs() < 1e-12 * (1.0 + e.abs()), "k = {k}");
        }
    }

    #[test]
    fn class_index_sets() {
        let (ks, s) = class_indices(8, 3, 30);
        assert_eq!(ks, vec![3, 5, 11, 13, 19, 21, 27, 29]);
        assert_eq!(s, vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        let (ks, _) = class_indices(8, 0, 20);
        assert_eq!(ks, vec![0, 8, 16]);
        let (ks, _) = class_indices(8, 4, 20);
        assert_eq!(ks, vec![4, 12, 20]);
    }

    #[test]
    fn chebyshev() {
        for n in 0..6 {
            let y: f64 = 0.3;
            assert!((chebyshev_t(n, y) - (n as f64 * y.acos()).cos()).abs() < 1e-14);
        }
    }
}
