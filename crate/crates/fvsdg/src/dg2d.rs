//! Semi-discrete DG operator on uniform rectangular meshes.
//!
//! For each cell `Ω` and test mode `r`
//!
//! `dα_r/dt = ⟨F, ∂_xφ_r⟩ + ⟨G, ∂_yφ_r⟩ − Σ_edges ∫ F̂_ν φ_r dl + ⟨S, φ_r⟩`
//!
//! where the edge flux `F̂_ν = F̂_ν⁺(U_int) + F̂_ν⁻(U_ext)` is evaluated
//! independently at every edge Gauss point. Each face is evaluated once with
//! its canonical normal `(1, 0)` or `(0, 1)`; the opposite cell uses the
//! negated value, which is exact because the split fluxes satisfy
//! `F̂_{−ν}(U_R, U_L) = −F̂_ν(U_L, U_R)`.

use rayon::prelude::*;

use crate::basis::{default_rule, project_2d, Basis2D};
use crate::characteristic::{frozen_eigenstructure, interp_transform, moment_transform, InterpSampler};
use crate::dg::{eval_state, with_context, CellUpdate, LimitStats, SpatialOperator};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flux::{numerical_flux, FluxContext, FluxScheme};
use crate::limiter::{
    kxrcf_flag, reconstruct_2d, tvb_corrections_2d, CharTransformKind, Indicator, LimiterConfig, LimiterKind, Tables2D,
};
use crate::mesh::{ghost_state, reflect, Boundaries, BoundaryKind, Mesh2D, Side};
use crate::models::{Model, State};
use crate::quadrature::QuadratureRule;

/// Numerical fluxes on the x-faces and y-faces, indexed `[face][quadrature point]`.
type FaceFluxes = (Vec<Vec<State>>, Vec<Vec<State>>);

/// Reference-basis values on one edge: `[edge point][mode]`.
type EdgeTable = Vec<Vec<f64>>;

/// FVS-DG operator on a uniform rectangular mesh.
#[derive(Clone, Debug)]
pub struct Dg2D {
    /// Mesh.
    pub mesh: Mesh2D,
    /// Equation model.
    pub model: Model,
    /// Numerical flux.
    pub scheme: FluxScheme,
    /// Boundary conditions.
    pub bc: Boundaries,
    /// Modal basis.
    pub basis: Basis2D,
    /// Limiter configuration.
    pub limiter: LimiterConfig,
    /// Step used when every wave speed vanishes.
    pub dt_max: f64,
    rule: QuadratureRule,
    vol: Vec<(f64, f64, f64)>,
    phi: Vec<Vec<f64>>,
    dphi_x: Vec<Vec<f64>>,
    dphi_y: Vec<Vec<f64>>,
    /// Edge tables in `Side` order (L, R, B, T).
    edges: [EdgeTable; 4],
    tables: Tables2D,
    sampler: Option<InterpSampler>,
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Left => 0,
        Side::Right => 1,
        Side::Bottom => 2,
        Side::Top => 3,
    }
}

impl Dg2D {
    /// Builds the operator; validates scheme/model/boundary compatibility.
    pub fn new(mesh: Mesh2D, model: Model, scheme: FluxScheme, bc: Boundaries, degree: usize) -> Result<Self> {
        if model.dim() != 2 {
            return Err(Error::Config(format!("model {} is not two-dimensional", model.name())));
        }
        scheme.check_compatible(&model)?;
        bc.validate(&model)?;
        let basis = Basis2D::new(degree);
        let rule = default_rule(degree);
        let vol = rule.tensor();
        let phi = vol.iter().map(|&(x, y, _)| basis.eval_ref(x, y, (0, 0))).collect();
        let dphi_x = vol.iter().map(|&(x, y, _)| basis.eval_ref(x, y, (1, 0))).collect();
        let dphi_y = vol.iter().map(|&(x, y, _)| basis.eval_ref(x, y, (0, 1))).collect();
        let edge = |fx: Option<f64>, fy: Option<f64>| -> EdgeTable {
            rule.points
                .iter()
                .map(|&p| basis.eval_ref(fx.unwrap_or(p), fy.unwrap_or(p), (0, 0)))
                .collect()
        };
        let edges = [
            edge(Some(-0.5), None),
            edge(Some(0.5), None),
            edge(None, Some(-0.5)),
            edge(None, Some(0.5)),
        ];
        let limiter = LimiterConfig::none();
        let tables = Tables2D::new(&basis, mesh.dx, mesh.dy, &limiter);
        Ok(Self {
            mesh,
            model,
            scheme,
            bc,
            basis,
            limiter,
            dt_max: f64::INFINITY,
            rule,
            vol,
            phi,
            dphi_x,
            dphi_y,
            edges,
            tables,
            sampler: None,
        })
    }

    /// Installs a limiter configuration.
    pub fn with_limiter(mut self, cfg: LimiterConfig) -> Result<Self> {
        cfg.validate()?;
        self.limiter = cfg;
        self.tables = Tables2D::new(&self.basis, self.mesh.dx, self.mesh.dy, &cfg);
        self.sampler = if cfg.transform == CharTransformKind::Interpolation {
            Some(InterpSampler::lattice_2d(&self.basis)?)
        } else {
            None
        };
        Ok(self)
    }

    /// Limiter tables for the current configuration.
    pub fn tables(&self) -> &Tables2D {
        &self.tables
    }

    /// Volume quadrature `(ξ, η, w)` on the reference square.
    pub fn volume_rule(&self) -> &[(f64, f64, f64)] {
        &self.vol
    }

    /// L² projection of a pointwise function.
    pub fn project<F: Fn(f64, f64) -> State>(&self, f: F) -> Field {
        project_2d(&self.mesh, &self.basis, self.model.n_comp(), f)
    }

    fn scale(&self) -> f64 {
        1.0 / self.mesh.area().sqrt()
    }

    /// Solution value at a physical point of `cell`.
    pub fn value_at(&self, field: &Field, cell: usize, p: [f64; 2]) -> State {
        let [xc, yc] = self.mesh.center(cell);
        let row = self
            .basis
            .eval_ref((p[0] - xc) / self.mesh.dx, (p[1] - yc) / self.mesh.dy, (0, 0));
        eval_state(field.cell(cell), field.n_comp, field.n_modes, &row, self.scale())
    }

    /// Cell-mean state.
    pub fn mean(&self, field: &Field, cell: usize) -> State {
        let mut u = [0.0; 4];
        for c in 0..field.n_comp {
            u[c] = field.coeffs(cell, c)[0] * self.scale();
        }
        u
    }

    /// Traces of `cell` at the Gauss points of the edge on `side`.
    fn edge_trace(&self, field: &Field, cell: usize, side: Side) -> Vec<State> {
        let s = self.scale();
        self.edges[side_index(side)]
            .iter()
            .map(|row| eval_state(field.cell(cell), field.n_comp, field.n_modes, row, s))
            .collect()
    }

    /// Physical position of edge point `q` on `side` of `cell`.
    fn edge_point(&self, cell: usize, side: Side, q: usize) -> [f64; 2] {
        let [xc, yc] = self.mesh.center(cell);
        let p = self.rule.points[q];
        let (hx, hy) = (0.5 * self.mesh.dx, 0.5 * self.mesh.dy);
        match side {
            Side::Left => [xc - hx, yc + p * self.mesh.dy],
            Side::Right => [xc + hx, yc + p * self.mesh.dy],
            Side::Bottom => [xc + p * self.mesh.dx, yc - hy],
            Side::Top => [xc + p * self.mesh.dx, yc + hy],
        }
    }

    /// Exterior traces across `side` of `cell` (neighbour or ghost).
    fn exterior_trace(&self, field: &Field, cell: usize, side: Side, interior: &[State]) -> Result<Vec<State>> {
        match self.mesh.neighbor(cell, side, &self.bc) {
            Some(j) => Ok(self.edge_trace(field, j, side.opposite())),
            None => interior
                .iter()
                .map(|u| ghost_state(self.bc.get(side), side.normal(), u, None, &self.model))
                .collect(),
        }
    }

    fn flux_context(&self, field: &Field, t: f64) -> Result<FluxContext> {
        if !self.scheme.needs_global_bound() {
            return Ok(FluxContext::default());
        }
        let radii: Vec<Result<f64>> = (0..self.mesh.n_cells())
            .into_par_iter()
            .map(|cell| {
                let mut m = 0.0f64;
                for side in Side::ALL {
                    let tr = self.edge_trace(field, cell, side);
                    for (q, u) in tr.iter().enumerate() {
                        let pos = self.edge_point(cell, side, q);
                        for n in [[1.0, 0.0], [0.0, 1.0]] {
                            m = m.max(self.model.eigen_normal(u, n, pos, t)?.spectral_radius());
                        }
                    }
                }
                Ok(m)
            })
            .collect();
        let mut m = 0.0f64;
        for r in radii {
            m = m.max(r?);
        }
        Ok(FluxContext { global_m: m })
    }

    /// Fluxes at the Gauss points of one face of `cell`, with the canonical
    /// normal for the `Right`/`Top` sides and the face owned by `cell`.
    ///
    /// For `Left`/`Bottom` (only used on non-periodic domain boundaries) the
    /// flux is computed with the canonical normal as well, with the ghost on
    /// the minus side.
    fn face_fluxes(&self, field: &Field, cell: usize, side: Side, t: f64, ctx: &FluxContext) -> Result<Vec<State>> {
        let own = self.edge_trace(field, cell, side);
        let ext = self.exterior_trace(field, cell, side, &own)?;
        let (n, flip) = match side {
            Side::Right => ([1.0, 0.0], false),
            Side::Top => ([0.0, 1.0], false),
            Side::Left => ([1.0, 0.0], true),
            Side::Bottom => ([0.0, 1.0], true),
        };
        own.iter()
            .zip(&ext)
            .enumerate()
            .map(|(q, (ui, ue))| {
                let pos = self.edge_point(cell, side, q);
                let (l, r) = if flip { (ue, ui) } else { (ui, ue) };
                numerical_flux(&self.model, &self.scheme, l, r, n, pos, t, ctx)
                    .map_err(|e| with_context(e, || format!(" at cell {cell} side {side:?} point {pos:?}")))
            })
            .collect()
    }

    /// All face fluxes, indexed `[x-faces, y-faces]`.
    ///
    /// x-face `(i, j)` with `i ∈ 0..=nx` is the left face of cell `(i, j)`;
    /// y-face `(i, j)` with `j ∈ 0..=ny` is the bottom face of cell `(i, j)`.
    fn all_face_fluxes(&self, field: &Field, t: f64) -> Result<FaceFluxes> {
        let (nx, ny) = (self.mesh.nx, self.mesh.ny);
        let ctx = self.flux_context(field, t)?;
        let xf: Vec<Result<Vec<State>>> = (0..(nx + 1) * ny)
            .into_par_iter()
            .map(|f| {
                let (i, j) = (f % (nx + 1), f / (nx + 1));
                if i > 0 {
                    self.face_fluxes(field, self.mesh.index(i - 1, j), Side::Right, t, &ctx)
                } else {
                    self.face_fluxes(field, self.mesh.index(0, j), Side::Left, t, &ctx)
                }
            })
            .collect();
        let yf: Vec<Result<Vec<State>>> = (0..nx * (ny + 1))
            .into_par_iter()
            .map(|f| {
                let (i, j) = (f % nx, f / nx);
                if j > 0 {
                    self.face_fluxes(field, self.mesh.index(i, j - 1), Side::Top, t, &ctx)
                } else {
                    self.face_fluxes(field, self.mesh.index(i, 0), Side::Bottom, t, &ctx)
                }
            })
            .collect();
        Ok((
            xf.into_iter().collect::<Result<_>>()?,
            yf.into_iter().collect::<Result<_>>()?,
        ))
    }

    /// Neighbour mean across `side` with boundary handling (copy or mirror).
    fn neighbor_mean(&self, means: &[State], cell: usize, side: Side) -> Result<State> {
        match self.mesh.neighbor(cell, side, &self.bc) {
            Some(j) => Ok(means[j]),
            None => match self.bc.get(side) {
                BoundaryKind::Reflective => reflect(&means[cell], side.normal(), &self.model),
                _ => Ok(means[cell]),
            },
        }
    }

    fn neighbor_means(&self, means: &[State], cell: usize) -> Result<[State; 4]> {
        Ok([
            self.neighbor_mean(means, cell, Side::Left)?,
            self.neighbor_mean(means, cell, Side::Right)?,
            self.neighbor_mean(means, cell, Side::Bottom)?,
            self.neighbor_mean(means, cell, Side::Top)?,
        ])
    }

    /// TVB-minmod troubled flags per `(cell, component)`.
    pub fn indicate_tvb(&self, field: &Field) -> Result<Vec<bool>> {
        let n = self.mesh.n_cells();
        let m = field.n_comp;
        let means: Vec<State> = (0..n).map(|i| self.mean(field, i)).collect();
        let rows: Vec<Result<Vec<bool>>> = (0..n)
            .into_par_iter()
            .map(|cell| {
                let nb = self.neighbor_means(&means, cell)?;
                Ok((0..m)
                    .map(|c| {
                        let v = [nb[0][c], nb[1][c], nb[2][c], nb[3][c]];
                        tvb_corrections_2d(field.coeffs(cell, c), v, &self.tables, self.limiter.tvb_m).changed
                    })
                    .collect())
            })
            .collect();
        let mut mask = Vec::with_capacity(n * m);
        for r in rows {
            mask.extend(r?);
        }
        Ok(mask)
    }

    /// Troubled flags per `(cell, component)` from the KXRCF indicator.
    pub fn indicate_kxrcf(&self, field: &Field, t: f64) -> Result<Vec<bool>> {
        let n = self.mesh.n_cells();
        let m = field.n_comp;
        let k = self.basis.degree;
        let h = 0.5 * self.mesh.dx.hypot(self.mesh.dy);
        let s = self.scale();
        let rows: Vec<Result<Vec<bool>>> = (0..n)
            .into_par_iter()
            .map(|cell| {
                let mut jump = [0.0; 4];
                let mut measure = 0.0;
                for side in Side::ALL {
                    let own = self.edge_trace(field, cell, side);
                    let ext = self.exterior_trace(field, cell, side, &own)?;
                    let nrm = side.normal();
                    let len = self.mesh.edge_length(side);
                    for (q, (ui, ue)) in own.iter().zip(&ext).enumerate() {
                        let vn = if self.model.is_scalar() {
                            let pos = self.edge_point(cell, side, q);
                            self.model.scalar_derivative(ui[0], nrm, pos, t)
                        } else {
                            let v = self.model.velocity(ui);
                            v[0] * nrm[0] + v[1] * nrm[1]
                        };
                        if vn >= 0.0 {
                            continue;
                        }
                        let w = self.rule.weights[q] * len;
                        measure += w;
                        for c in 0..m {
                            jump[c] += w * (ui[c] - ue[c]);
                        }
                    }
                }
                let mut norm = [0.0f64; 4];
                for row in &self.phi {
                    let u = eval_state(field.cell(cell), m, field.n_modes, row, s);
                    for c in 0..m {
                        norm[c] = norm[c].max(u[c].abs());
                    }
                }
                Ok((0..m).map(|c| kxrcf_flag(jump[c], measure, h, k, norm[c])).collect())
            })
            .collect();
        let mut mask = Vec::with_capacity(n * m);
        for r in rows {
            mask.extend(r?);
        }
        Ok(mask)
    }

    fn limit_cell_physical(&self, field: &Field, cell: usize, flags: &[bool], nb: &[State; 4]) -> Result<Vec<f64>> {
        let m = field.n_comp;
        let nm = field.n_modes;
        let mut out = field.cell(cell).to_vec();
        for c in 0..m {
            if self.limiter.indicator == Indicator::Tvb && !flags[c] {
                continue;
            }
            let v = [nb[0][c], nb[1][c], nb[2][c], nb[3][c]];
            let coeffs = field.coeffs(cell, c);
            let corr = tvb_corrections_2d(coeffs, v, &self.tables, self.limiter.tvb_m);
            let new = reconstruct_2d(coeffs, corr.targets, v, &self.tables)?;
            out[c * nm..(c + 1) * nm].copy_from_slice(&new);
        }
        Ok(out)
    }

    /// Edge-mean state of every component on `side`.
    fn edge_mean_state(&self, field: &Field, cell: usize, side: Side) -> State {
        let row = &self.tables.edge_rows[side_index(side)];
        let mut u = [0.0; 4];
        for c in 0..field.n_comp {
            u[c] = field.coeffs(cell, c).iter().zip(row).map(|(a, b)| a * b).sum();
        }
        u
    }

    /// Limits one troubled cell in local characteristic variables (four edges, weight ¼).
    fn limit_cell_characteristic(&self, field: &Field, cell: usize, means: &[State]) -> Result<(Vec<f64>, usize)> {
        let m = field.n_comp;
        let nm = field.n_modes;
        let a = field.cell(cell);
        let nb = self.neighbor_means(means, cell)?;
        let mut acc = vec![0.0; m * nm];
        let mut fallbacks = 0;
        for side in Side::ALL {
            let j = self.mesh.neighbor(cell, side, &self.bc);
            let own_edge = self.edge_mean_state(field, cell, side);
            let other_edge = j.map(|j| self.edge_mean_state(field, j, side.opposite()));
            let other_mean = j.map_or(means[cell], |j| means[j]);
            let (e, fb) = frozen_eigenstructure(
                &self.model,
                &own_edge,
                other_edge.as_ref(),
                &means[cell],
                &other_mean,
                self.limiter.freeze,
                side.normal(),
            )?;
            fallbacks += fb as usize;
            let mut b = match &self.sampler {
                Some(s) => interp_transform(a, &e.l, m, nm, s)?,
                None => moment_transform(a, &e.l, m, nm),
            };
            let w: Vec<State> = nb.iter().map(|u| e.to_characteristic(u)).collect();
            for k in 0..m {
                let v = [w[0][k], w[1][k], w[2][k], w[3][k]];
                let row = &b[k * nm..(k + 1) * nm];
                let corr = tvb_corrections_2d(row, v, &self.tables, self.limiter.tvb_m);
                if self.limiter.indicator == Indicator::Tvb && !corr.changed {
                    continue;
                }
                let new = reconstruct_2d(row, corr.targets, v, &self.tables)?;
                b[k * nm..(k + 1) * nm].copy_from_slice(&new);
            }
            let back = match &self.sampler {
                Some(s) => interp_transform(&b, &e.r, m, nm, s)?,
                None => moment_transform(&b, &e.r, m, nm),
            };
            for (acc, v) in acc.iter_mut().zip(back) {
                *acc += 0.25 * v;
            }
        }
        for c in 0..m {
            acc[c * nm] = a[c * nm];
        }
        Ok((acc, fallbacks))
    }

    /// Applies the configured indicator and limiter, returning statistics.
    pub fn apply_limiter(&self, field: &mut Field, t: f64) -> Result<LimitStats> {
        let n = self.mesh.n_cells();
        let m = field.n_comp;
        if self.limiter.kind == LimiterKind::None || self.basis.degree == 0 {
            return Ok(LimitStats {
                mask: vec![false; n * m],
                ..Default::default()
            });
        }
        let mask = match self.limiter.indicator {
            Indicator::Tvb => self.indicate_tvb(field)?,
            Indicator::Kxrcf => self.indicate_kxrcf(field, t)?,
            Indicator::AlwaysOn => vec![true; n * m],
        };
        let means: Vec<State> = (0..n).map(|i| self.mean(field, i)).collect();
        let characteristic = self.limiter.characteristic && !self.model.is_scalar();
        let snapshot = &*field;
        let updates: Vec<Result<CellUpdate>> = (0..n)
            .into_par_iter()
            .map(|cell| {
                let flags = &mask[cell * m..(cell + 1) * m];
                if !flags.iter().any(|&f| f) {
                    return Ok(None);
                }
                if characteristic {
                    self.limit_cell_characteristic(snapshot, cell, &means).map(Some)
                } else {
                    let nb = self.neighbor_means(&means, cell)?;
                    Ok(Some((self.limit_cell_physical(snapshot, cell, flags, &nb)?, 0)))
                }
            })
            .collect();
        let mut stats = LimitStats {
            mask,
            ..Default::default()
        };
        let cl = field.cell_len();
        for (i, u) in updates.into_iter().enumerate() {
            if let Some((cell, fb)) = u? {
                field.data[i * cl..(i + 1) * cl].copy_from_slice(&cell);
                stats.troubled_cells += 1;
                stats.freeze_fallbacks += fb;
            }
        }
        Ok(stats)
    }
}

impl SpatialOperator for Dg2D {
    fn model(&self) -> &Model {
        &self.model
    }

    fn n_cells(&self) -> usize {
        self.mesh.n_cells()
    }

    fn zeros(&self) -> Field {
        Field::zeros(self.mesh.n_cells(), self.model.n_comp(), self.basis.n_modes())
    }

    fn residual(&self, field: &Field, t: f64, out: &mut Field) -> Result<()> {
        let (xf, yf) = self.all_face_fluxes(field, t)?;
        let m = field.n_comp;
        let nm = field.n_modes;
        let (dx, dy) = (self.mesh.dx, self.mesh.dy);
        let nx = self.mesh.nx;
        let s = self.scale();
        let sq = self.mesh.area().sqrt();
        let cl = field.cell_len();
        out.data.par_chunks_mut(cl).enumerate().for_each(|(cell, res)| {
            res.iter_mut().for_each(|v| *v = 0.0);
            let coeffs = field.cell(cell);
            let [xc, yc] = self.mesh.center(cell);
            for (q, &(xi, eta, w)) in self.vol.iter().enumerate() {
                let u = eval_state(coeffs, m, nm, &self.phi[q], s);
                let pos = [xc + xi * dx, yc + eta * dy];
                let (f, g) = self.model.flux_2d(&u, pos, t);
                let src = self.model.source(&u, pos, t);
                for c in 0..m {
                    let r = &mut res[c * nm..(c + 1) * nm];
                    let fw = w * sq * f[c] / dx;
                    let gw = w * sq * g[c] / dy;
                    for l in 0..nm {
                        r[l] += fw * self.dphi_x[q][l] + gw * self.dphi_y[q][l];
                    }
                    if let Some(src) = src {
                        for l in 0..nm {
                            r[l] += w * sq * src[c] * self.phi[q][l];
                        }
                    }
                }
            }
            let (i, j) = self.mesh.ij(cell);
            // (face fluxes, edge table, signed edge length)
            let faces: [(&Vec<State>, &EdgeTable, f64); 4] = [
                (&xf[j * (nx + 1) + i], &self.edges[0], dy),
                (&xf[j * (nx + 1) + i + 1], &self.edges[1], -dy),
                (&yf[j * nx + i], &self.edges[2], dx),
                (&yf[(j + 1) * nx + i], &self.edges[3], -dx),
            ];
            for (fl, table, len) in faces {
                for (q, f) in fl.iter().enumerate() {
                    let w = self.rule.weights[q] * len * s;
                    for c in 0..m {
                        let r = &mut res[c * nm..(c + 1) * nm];
                        for l in 0..nm {
                            r[l] += w * f[c] * table[q][l];
                        }
                    }
                }
            }
        });
        out.time = t;
        Ok(())
    }

    fn limit(&self, field: &mut Field, t: f64) -> Result<LimitStats> {
        self.apply_limiter(field, t)
    }

    fn stable_dt(&self, field: &Field, cfl: f64, t: f64) -> f64 {
        let rate = (0..self.mesh.n_cells())
            .map(|cell| {
                let u = self.mean(field, cell);
                let pos = self.mesh.center(cell);
                self.model.max_speed_n(&u, [1.0, 0.0], pos, t) / self.mesh.dx
                    + self.model.max_speed_n(&u, [0.0, 1.0], pos, t) / self.mesh.dy
            })
            .fold(0.0f64, f64::max);
        if rate > 0.0 && rate.is_finite() {
            cfl / rate
        } else {
            self.dt_max
        }
    }
}
