//! Troubled-cell indicators and TVB(D)-minmod limiters.
//!
//! Three limiters share one structure: a TVB-minmod step produces corrected
//! end values (1D) or edge means (2D); the cell polynomial is then rebuilt
//! with the cell mean `α_0` fixed so that it matches these targets.
//!
//! * [`LimiterKind::ClassicalTvb`] — minimum-norm least-squares fit of the targets.
//! * [`LimiterKind::IsTvb`] — minimise the smoothness factor `IS` subject to the targets.
//! * [`LimiterKind::IsL2Tvb`] — minimise `ω_IS·IS + ω_L2·‖u − u_old‖²` subject to the targets.
//!
//! The constrained problems are solved through their saddle-point (KKT) systems.
//! With `K = 1` the constraints over-determine the slope and the limiters fall
//! back to the classical P¹ minmod slope.

use nalgebra::{DMatrix, DVector};

use crate::basis::{Basis1D, Basis2D};
use crate::error::{Error, Result};
use crate::quadrature::gauss_rule;

/// Relative tolerance used to decide that a minmod correction changed a value.
pub const CHANGE_TOL: f64 = 1e-13;

/// Limiter family.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum LimiterKind {
    /// No limiting.
    None,
    /// Classical TVB(D)-minmod with least-squares reconstruction.
    ClassicalTvb,
    /// Smoothness-factor constrained TVB(D)-minmod (`ω_IS = 1`, `ω_L2 = 0`).
    IsTvb,
    /// Bi-objective IS + L² TVB(D)-minmod.
    IsL2Tvb,
}

/// Troubled-cell indicator.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum Indicator {
    /// The TVB-minmod indicator built into the limiter (per component).
    Tvb,
    /// The KXRCF inflow-jump indicator.
    Kxrcf,
    /// Every cell is troubled.
    AlwaysOn,
}

/// Averaging used to freeze the Jacobian at an interface.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum FreezeAverage {
    /// Componentwise arithmetic mean of the two edge means.
    Arithmetic,
    /// Roe average of the two edge means.
    Roe,
}

/// Transformation of cell polynomials into characteristic variables.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum CharTransformKind {
    /// `B = L A` acting on modal coefficients.
    Moment,
    /// Sample at nodes, rotate the samples, re-interpolate.
    Interpolation,
}

/// Limiter configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimiterConfig {
    /// Limiter family.
    pub kind: LimiterKind,
    /// Weight of the smoothness factor.
    pub w_is: f64,
    /// Weight of the L² deviation.
    pub w_l2: f64,
    /// TVB parameter `M` (`0` gives TVD).
    pub tvb_m: f64,
    /// Troubled-cell indicator.
    pub indicator: Indicator,
    /// Limit in local characteristic variables.
    pub characteristic: bool,
    /// Interface freezing average for characteristic limiting.
    pub freeze: FreezeAverage,
    /// Characteristic transformation.
    pub transform: CharTransformKind,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        Self::none()
    }
}

impl LimiterConfig {
    /// No limiting.
    pub fn none() -> Self {
        Self {
            kind: LimiterKind::None,
            w_is: 1.0,
            w_l2: 0.0,
            tvb_m: 0.0,
            indicator: Indicator::Tvb,
            characteristic: false,
            freeze: FreezeAverage::Arithmetic,
            transform: CharTransformKind::Moment,
        }
    }

    /// Classical TVB(D)-minmod limiter with parameter `m`.
    pub fn classical(m: f64) -> Self {
        Self {
            kind: LimiterKind::ClassicalTvb,
            tvb_m: m,
            ..Self::none()
        }
    }

    /// IS-constrained TVB(D)-minmod limiter with parameter `m`.
    pub fn is_tvb(m: f64) -> Self {
        Self {
            kind: LimiterKind::IsTvb,
            tvb_m: m,
            ..Self::none()
        }
    }

    /// IS + L² bi-objective limiter with weights `(w_is, w_l2)` and parameter `m`.
    pub fn is_l2(w_is: f64, w_l2: f64, m: f64) -> Self {
        Self {
            kind: LimiterKind::IsL2Tvb,
            w_is,
            w_l2,
            tvb_m: m,
            ..Self::none()
        }
    }

    /// Builder: select the indicator.
    pub fn with_indicator(mut self, indicator: Indicator) -> Self {
        self.indicator = indicator;
        self
    }

    /// Builder: toggle characteristic limiting.
    pub fn with_characteristic(mut self, on: bool) -> Self {
        self.characteristic = on;
        self
    }

    /// Effective objective weights `(ω_IS, ω_L2)`.
    pub fn weights(&self) -> (f64, f64) {
        match self.kind {
            LimiterKind::IsTvb => (1.0, 0.0),
            _ => (self.w_is, self.w_l2),
        }
    }

    /// Validates weights and parameters.
    pub fn validate(&self) -> Result<()> {
        if self.tvb_m < 0.0 || !self.tvb_m.is_finite() {
            return Err(Error::Config(format!("TVB parameter must be >= 0, got {}", self.tvb_m)));
        }
        if self.kind == LimiterKind::IsL2Tvb {
            let (a, b) = (self.w_is, self.w_l2);
            if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || (a + b - 1.0).abs() > 1e-12 {
                return Err(Error::Config(format!(
                    "limiter weights must lie in [0,1] and sum to 1, got ({a}, {b})"
                )));
            }
        }
        if self.kind == LimiterKind::IsTvb && (self.w_is != 1.0 || self.w_l2 != 0.0) {
            return Err(Error::Config("the IS-TVB limiter requires weights (1, 0)".into()));
        }
        Ok(())
    }
}

/// TVB-modified minmod: `v₁` if `|v₁| ≤ M Δx²`, otherwise the common-sign
/// minimum magnitude (or zero on mixed signs).
pub fn minmod(values: &[f64], tvb_m: f64, dx: f64) -> f64 {
    let v1 = values[0];
    if v1.abs() <= tvb_m * dx * dx {
        return v1;
    }
    let s = v1.signum();
    if values.iter().all(|v| v.signum() == s && *v != 0.0) {
        s * values.iter().fold(f64::INFINITY, |a, v| a.min(v.abs()))
    } else {
        0.0
    }
}

/// Whether a minmod correction changed `original`.
pub fn changed(original: f64, modified: f64) -> bool {
    (original - modified).abs() > CHANGE_TOL * (1.0 + original.abs())
}

/// Reconstruction strategy chosen once per configuration.
#[derive(Clone, Debug)]
enum Solver {
    /// `K = 0`: nothing to limit.
    Constant,
    /// Classical P¹ minmod slope per direction.
    P1Minmod,
    /// `ã = pinv · b`.
    LeastSquares(DMatrix<f64>),
    /// Factorised, symmetrically equilibrated saddle-point matrix `S A S`
    /// together with the diagonal scaling `S`.
    Saddle(nalgebra::linalg::LU<f64, nalgebra::Dyn, nalgebra::Dyn>, DVector<f64>),
}

/// Smoothness-factor matrix in 1D, on the non-constant modes `1..=K`.
///
/// `𝕄_jk = 2 Σ_{d=1..K} Δx^{2d−1} ∫ φ_j^{(d)} φ_k^{(d)} dx`, so that
/// `IS(u) = ½ ãᵀ 𝕄 ã`.
pub fn assemble_m_is_1d(k: usize, dx: f64) -> DMatrix<f64> {
    let basis = Basis1D::new(k);
    let rule = gauss_rule(k + 1).expect("rule");
    let mut m = DMatrix::zeros(k, k);
    for d in 1..=k {
        let weight = 2.0 * dx.powi(2 * d as i32 - 1);
        for (q, &xi) in rule.points.iter().enumerate() {
            // physical derivative: eval_ref / (dx^d sqrt(dx)); integral weight w*dx
            let v = basis.eval_ref(xi, d);
            let f = rule.weights[q] * dx / (dx.powi(2 * d as i32) * dx);
            for a in 1..=k {
                for b in 1..=k {
                    m[(a - 1, b - 1)] += weight * f * v[a] * v[b];
                }
            }
        }
    }
    m
}

/// Smoothness-factor matrix in 2D on the non-constant modes, with weights
/// `|Ω|^{2|𝐝|−1}` (`|Ω|` the cell area) summed over every multi-index with
/// `1 ≤ |𝐝| ≤ K`; `IS(u) = ½ ãᵀ 𝕄 ã`.
pub fn assemble_m_is_2d(basis: &Basis2D, dx: f64, dy: f64) -> DMatrix<f64> {
    let k = basis.degree;
    let nm = basis.n_modes();
    let area = dx * dy;
    let rule = gauss_rule(k + 1).expect("rule");
    let pts = rule.tensor();
    let mut m = DMatrix::zeros(nm - 1, nm - 1);
    for order in 1..=k {
        let weight = 2.0 * area.powi(2 * order as i32 - 1);
        for ddx in 0..=order {
            let ddy = order - ddx;
            let scale = 1.0 / (dx.powi(ddx as i32) * dy.powi(ddy as i32) * area.sqrt());
            for &(xi, eta, w) in &pts {
                let v = basis.eval_ref(xi, eta, (ddx, ddy));
                let f = w * area * scale * scale;
                for a in 1..nm {
                    if v[a] == 0.0 {
                        continue;
                    }
                    for b in 1..nm {
                        m[(a - 1, b - 1)] += weight * f * v[a] * v[b];
                    }
                }
            }
        }
    }
    m
}

/// Saddle matrix `[[ω_IS 𝕄 + 2 ω_L2 I, Φ], [Φᵀ, 0]]` for constraint rows `phi_t`
/// (`n_con × n_free`).
pub fn saddle_matrix(m_is: &DMatrix<f64>, phi_t: &DMatrix<f64>, w_is: f64, w_l2: f64) -> DMatrix<f64> {
    let nf = m_is.nrows();
    let nc = phi_t.nrows();
    let mut a = DMatrix::zeros(nf + nc, nf + nc);
    for i in 0..nf {
        for j in 0..nf {
            a[(i, j)] = w_is * m_is[(i, j)];
        }
        a[(i, i)] += 2.0 * w_l2;
    }
    for c in 0..nc {
        for j in 0..nf {
            a[(nf + c, j)] = phi_t[(c, j)];
            a[(j, nf + c)] = phi_t[(c, j)];
        }
    }
    a
}

/// Symmetric diagonal scaling `s_i = 1/√(max_j |a_ij|)`.
///
/// The smoothness block spans many orders of magnitude across derivative
/// orders and cell sizes; equilibrating rows and columns makes the
/// conditioning test and the LU solve insensitive to that scaling.
fn equilibrate(a: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let n = a.nrows();
    let s = DVector::from_fn(n, |i, _| {
        let m = a.row(i).iter().fold(0.0f64, |x, &y| x.max(y.abs()));
        if m > 0.0 {
            1.0 / m.sqrt()
        } else {
            1.0
        }
    });
    let scaled = DMatrix::from_fn(n, n, |i, j| s[i] * a[(i, j)] * s[j]);
    (scaled, s)
}

fn well_conditioned(a: &DMatrix<f64>) -> bool {
    let sv = a.clone().svd(false, false).singular_values;
    let max = sv.iter().fold(0.0f64, |x, &y| x.max(y));
    let min = sv.iter().fold(f64::INFINITY, |x, &y| x.min(y));
    max > 0.0 && min / max > 1e-13
}

fn build_solver(cfg: &LimiterConfig, k: usize, m_is: &DMatrix<f64>, phi_t: &DMatrix<f64>) -> Solver {
    if k == 0 {
        return Solver::Constant;
    }
    match cfg.kind {
        LimiterKind::None => Solver::Constant,
        LimiterKind::ClassicalTvb => {
            if k == 1 {
                return Solver::P1Minmod;
            }
            let pinv = phi_t
                .clone()
                .pseudo_inverse(1e-12)
                .expect("pseudo-inverse of constraint matrix");
            Solver::LeastSquares(pinv)
        }
        LimiterKind::IsTvb | LimiterKind::IsL2Tvb => {
            let (w_is, w_l2) = cfg.weights();
            let (a, s) = equilibrate(&saddle_matrix(m_is, phi_t, w_is, w_l2));
            if k == 1 || !well_conditioned(&a) {
                Solver::P1Minmod
            } else {
                Solver::Saddle(a.lu(), s)
            }
        }
    }
}

/// Precomputed data for limiting on a uniform 1D mesh.
#[derive(Clone, Debug)]
pub struct Tables1D {
    /// Polynomial degree.
    pub k: usize,
    /// Cell width.
    pub dx: f64,
    /// `φ_ℓ(x_{i−1/2})` for every mode.
    pub end_left: Vec<f64>,
    /// `φ_ℓ(x_{i+1/2})` for every mode.
    pub end_right: Vec<f64>,
    /// Smoothness matrix on modes `1..=K`.
    pub m_is: DMatrix<f64>,
    /// Constraint rows (2 × K) on modes `1..=K`.
    pub phi_t: DMatrix<f64>,
    solver: Solver,
    cfg: LimiterConfig,
}

impl Tables1D {
    /// Builds tables for degree `k`, width `dx` and configuration `cfg`.
    pub fn new(k: usize, dx: f64, cfg: &LimiterConfig) -> Self {
        let b = Basis1D::new(k);
        let s = dx.sqrt();
        let end_left: Vec<f64> = b.eval_ref(-0.5, 0).iter().map(|v| v / s).collect();
        let end_right: Vec<f64> = b.eval_ref(0.5, 0).iter().map(|v| v / s).collect();
        let m_is = assemble_m_is_1d(k, dx);
        let mut phi_t = DMatrix::zeros(2, k);
        for l in 1..=k {
            phi_t[(0, l - 1)] = end_left[l];
            phi_t[(1, l - 1)] = end_right[l];
        }
        let solver = build_solver(cfg, k, &m_is, &phi_t);
        Self {
            k,
            dx,
            end_left,
            end_right,
            m_is,
            phi_t,
            solver,
            cfg: *cfg,
        }
    }

    /// Cell mean of a modal vector.
    pub fn mean(&self, coeffs: &[f64]) -> f64 {
        coeffs[0] / self.dx.sqrt()
    }

    /// Left and right end values `(U⁺_{i−1/2}, U⁻_{i+1/2})`.
    pub fn ends(&self, coeffs: &[f64]) -> (f64, f64) {
        let l = coeffs.iter().zip(&self.end_left).map(|(a, b)| a * b).sum();
        let r = coeffs.iter().zip(&self.end_right).map(|(a, b)| a * b).sum();
        (l, r)
    }

    /// Smoothness factor `IS(u)` of a modal vector.
    pub fn smoothness(&self, coeffs: &[f64]) -> f64 {
        let a = DVector::from_column_slice(&coeffs[1..]);
        0.5 * (a.transpose() * &self.m_is * &a)[(0, 0)]
    }
}

/// Result of the TVB-minmod step for one scalar polynomial in 1D.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corrections1D {
    /// Whether any end value was modified.
    pub changed: bool,
    /// Corrected left end value `U^{+,mod}_{i−1/2}`.
    pub left: f64,
    /// Corrected right end value `U^{−,mod}_{i+1/2}`.
    pub right: f64,
}

/// TVB-minmod corrections of one scalar polynomial given its neighbour means.
pub fn tvb_corrections_1d(coeffs: &[f64], nb_left: f64, nb_right: f64, tables: &Tables1D, tvb_m: f64) -> Corrections1D {
    let mean = tables.mean(coeffs);
    let (ul, ur) = tables.ends(coeffs);
    let dm = mean - nb_left;
    let dp = nb_right - mean;
    let hat = mean - ul;
    let tilde = ur - mean;
    let hat_m = minmod(&[hat, dm, dp], tvb_m, tables.dx);
    let tilde_m = minmod(&[tilde, dm, dp], tvb_m, tables.dx);
    Corrections1D {
        changed: changed(hat, hat_m) || changed(tilde, tilde_m),
        left: mean - hat_m,
        right: mean + tilde_m,
    }
}

/// Rebuilds a 1D polynomial (mean fixed) matching the corrected end values.
///
/// `nb_left`/`nb_right` are only used by the P¹ minmod fallback.
pub fn reconstruct_1d(coeffs: &[f64], targets: (f64, f64), nb: (f64, f64), tables: &Tables1D) -> Result<Vec<f64>> {
    let k = tables.k;
    let mut out = coeffs.to_vec();
    match &tables.solver {
        Solver::Constant => {}
        Solver::P1Minmod => {
            let mean = tables.mean(coeffs);
            let (ul, ur) = tables.ends(coeffs);
            let d = minmod(
                &[0.5 * (ur - ul), mean - nb.0, nb.1 - mean],
                tables.cfg.tvb_m,
                tables.dx,
            );
            out.iter_mut().skip(1).for_each(|v| *v = 0.0);
            out[1] = d / tables.end_right[1];
        }
        Solver::LeastSquares(pinv) => {
            let b = DVector::from_vec(vec![
                targets.0 - coeffs[0] * tables.end_left[0],
                targets.1 - coeffs[0] * tables.end_right[0],
            ]);
            let a = pinv * b;
            out[1..=k].copy_from_slice(a.as_slice());
        }
        Solver::Saddle(lu, s) => {
            let (_, w_l2) = tables.cfg.weights();
            let mut rhs = DVector::zeros(k + 2);
            for l in 1..=k {
                rhs[l - 1] = 2.0 * w_l2 * coeffs[l];
            }
            rhs[k] = targets.0 - coeffs[0] * tables.end_left[0];
            rhs[k + 1] = targets.1 - coeffs[0] * tables.end_right[0];
            let y = lu
                .solve(&rhs.component_mul(s))
                .ok_or(Error::Singular("1D limiter saddle system"))?;
            let x = y.component_mul(s);
            out[1..=k].copy_from_slice(&x.as_slice()[..k]);
        }
    }
    Ok(out)
}

/// Precomputed data for limiting on a uniform rectangular mesh.
#[derive(Clone, Debug)]
pub struct Tables2D {
    /// Polynomial degree.
    pub k: usize,
    /// Cell width in x.
    pub dx: f64,
    /// Cell width in y.
    pub dy: f64,
    /// Basis.
    pub basis: Basis2D,
    /// Edge means of every mode on the L, R, B, T edges.
    pub edge_rows: [Vec<f64>; 4],
    /// Smoothness matrix on non-constant modes.
    pub m_is: DMatrix<f64>,
    /// Constraint rows (4 × (N_modes − 1)), normalised by edge length.
    pub gamma_t: DMatrix<f64>,
    /// Indices of the pure-x and pure-y linear modes.
    linear_modes: (usize, usize),
    solver: Solver,
    cfg: LimiterConfig,
}

impl Tables2D {
    /// Builds tables for the basis, cell size and configuration.
    pub fn new(basis: &Basis2D, dx: f64, dy: f64, cfg: &LimiterConfig) -> Self {
        let k = basis.degree;
        let nm = basis.n_modes();
        let rule = gauss_rule(k + 1).expect("rule");
        let s = (dx * dy).sqrt();
        let edge_mean = |fixed_x: Option<f64>, fixed_y: Option<f64>| -> Vec<f64> {
            let mut row = vec![0.0; nm];
            for (q, &p) in rule.points.iter().enumerate() {
                let (xi, eta) = (fixed_x.unwrap_or(p), fixed_y.unwrap_or(p));
                let v = basis.eval_ref(xi, eta, (0, 0));
                for m in 0..nm {
                    row[m] += rule.weights[q] * v[m] / s;
                }
            }
            row
        };
        let edge_rows = [
            edge_mean(Some(-0.5), None),
            edge_mean(Some(0.5), None),
            edge_mean(None, Some(-0.5)),
            edge_mean(None, Some(0.5)),
        ];
        let m_is = assemble_m_is_2d(basis, dx, dy);
        let mut gamma_t = DMatrix::zeros(4, nm - 1);
        for (c, row) in edge_rows.iter().enumerate() {
            for m in 1..nm {
                gamma_t[(c, m - 1)] = row[m];
            }
        }
        let find = |p: (usize, usize)| basis.modes.iter().position(|&m| m == p).unwrap_or(0);
        let linear_modes = (find((1, 0)), find((0, 1)));
        let solver = build_solver(cfg, k, &m_is, &gamma_t);
        Self {
            k,
            dx,
            dy,
            basis: basis.clone(),
            edge_rows,
            m_is,
            gamma_t,
            linear_modes,
            solver,
            cfg: *cfg,
        }
    }

    /// Cell mean and L/R/B/T edge means of a modal vector.
    pub fn edge_means(&self, coeffs: &[f64]) -> EdgeMeans2D {
        let dot = |row: &Vec<f64>| coeffs.iter().zip(row).map(|(a, b)| a * b).sum::<f64>();
        EdgeMeans2D {
            mean: coeffs[0] / (self.dx * self.dy).sqrt(),
            left: dot(&self.edge_rows[0]),
            right: dot(&self.edge_rows[1]),
            bottom: dot(&self.edge_rows[2]),
            top: dot(&self.edge_rows[3]),
        }
    }

    /// Smoothness factor `IS(u)` of a modal vector.
    pub fn smoothness(&self, coeffs: &[f64]) -> f64 {
        let a = DVector::from_column_slice(&coeffs[1..]);
        0.5 * (a.transpose() * &self.m_is * &a)[(0, 0)]
    }
}

/// Cell mean and boundary-edge means of a rectangular cell polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeMeans2D {
    /// Cell mean `Ū`.
    pub mean: f64,
    /// Left edge mean `Ū^L`.
    pub left: f64,
    /// Right edge mean `Ū^R`.
    pub right: f64,
    /// Bottom edge mean `Ū^B`.
    pub bottom: f64,
    /// Top edge mean `Ū^T`.
    pub top: f64,
}

/// Result of the TVB-minmod step for one scalar polynomial in 2D.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corrections2D {
    /// Whether any edge mean was modified.
    pub changed: bool,
    /// Corrected L, R, B, T edge means.
    pub targets: [f64; 4],
}

/// TVB-minmod corrections of one scalar polynomial; `nb` holds the L, R, B, T neighbour means.
///
/// `Ū^{L,mod} = Ū − minmod(Ū − Ū^L, Δ_L, Δ_R)`, `Ū^{R,mod} = Ū + minmod(Ū^R − Ū, Δ_L, Δ_R)`
/// and likewise in y; the TVB threshold uses `max(Δx, Δy)`.
pub fn tvb_corrections_2d(coeffs: &[f64], nb: [f64; 4], tables: &Tables2D, tvb_m: f64) -> Corrections2D {
    let e = tables.edge_means(coeffs);
    let h = tables.dx.max(tables.dy);
    let dl = e.mean - nb[0];
    let dr = nb[1] - e.mean;
    let db = e.mean - nb[2];
    let dt = nb[3] - e.mean;
    let devs = [e.mean - e.left, e.right - e.mean, e.mean - e.bottom, e.top - e.mean];
    let mods = [
        minmod(&[devs[0], dl, dr], tvb_m, h),
        minmod(&[devs[1], dl, dr], tvb_m, h),
        minmod(&[devs[2], db, dt], tvb_m, h),
        minmod(&[devs[3], db, dt], tvb_m, h),
    ];
    Corrections2D {
        changed: (0..4).any(|i| changed(devs[i], mods[i])),
        targets: [e.mean - mods[0], e.mean + mods[1], e.mean - mods[2], e.mean + mods[3]],
    }
}

/// Rebuilds a 2D polynomial (mean fixed) matching the corrected edge means.
pub fn reconstruct_2d(coeffs: &[f64], targets: [f64; 4], nb: [f64; 4], tables: &Tables2D) -> Result<Vec<f64>> {
    let nf = tables.basis.n_modes() - 1;
    let mut out = coeffs.to_vec();
    let rhs_con = |c: usize| targets[c] - coeffs[0] * tables.edge_rows[c][0];
    match &tables.solver {
        Solver::Constant => {}
        Solver::P1Minmod => {
            let e = tables.edge_means(coeffs);
            let h = tables.dx.max(tables.dy);
            let m = tables.cfg.tvb_m;
            let sx = minmod(&[0.5 * (e.right - e.left), e.mean - nb[0], nb[1] - e.mean], m, h);
            let sy = minmod(&[0.5 * (e.top - e.bottom), e.mean - nb[2], nb[3] - e.mean], m, h);
            out.iter_mut().skip(1).for_each(|v| *v = 0.0);
            let (ix, iy) = tables.linear_modes;
            out[ix] = sx / tables.edge_rows[1][ix];
            out[iy] = sy / tables.edge_rows[3][iy];
        }
        Solver::LeastSquares(pinv) => {
            let b = DVector::from_fn(4, |c, _| rhs_con(c));
            let a = pinv * b;
            out[1..].copy_from_slice(a.as_slice());
        }
        Solver::Saddle(lu, s) => {
            let (_, w_l2) = tables.cfg.weights();
            let mut rhs = DVector::zeros(nf + 4);
            for m in 0..nf {
                rhs[m] = 2.0 * w_l2 * coeffs[m + 1];
            }
            for c in 0..4 {
                rhs[nf + c] = rhs_con(c);
            }
            let y = lu
                .solve(&rhs.component_mul(s))
                .ok_or(Error::Singular("2D limiter saddle system"))?;
            let x = y.component_mul(s);
            out[1..].copy_from_slice(&x.as_slice()[..nf]);
        }
    }
    Ok(out)
}

/// KXRCF ratio `J = |jump| / (h^{(K+1)/2} |∂Ω⁻| ‖u‖_∞)` and its flag.
///
/// `jump` is the inflow-boundary integral of `u_Ω − u_nb`, `measure` the
/// inflow-boundary measure, `h` half the cell diameter and `norm` the
/// maximum of `|u|` over volume quadrature points. Cells without inflow
/// boundary are not flagged; a vanishing norm flags iff the jump is not negligible.
pub fn kxrcf_flag(jump: f64, measure: f64, h: f64, k: usize, norm: f64) -> bool {
    if measure <= 0.0 {
        return false;
    }
    if norm < 1e-13 {
        return jump.abs() > 1e-13;
    }
    jump.abs() / (h.powf(0.5 * (k as f64 + 1.0)) * measure * norm) > 1.0
}
