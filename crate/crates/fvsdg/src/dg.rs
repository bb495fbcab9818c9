//! Semi-discrete DG operators: residual assembly, time-step selection and
//! limiting on uniform 1D meshes (the 2D operator lives in [`crate::dg2d`]).
//!
//! With an orthonormal basis the mass matrix is the identity, so for each cell
//! `I_i` and test mode `r`
//!
//! `dα_r/dt = ⟨F(U_h), φ_r'⟩ − [F̂_{i+1/2} φ_r(x⁻_{i+1/2}) − F̂_{i−1/2} φ_r(x⁺_{i−1/2})] + ⟨S, φ_r⟩`
//!
//! with `F̂ = F⁺(U⁻) + F⁻(U⁺)` from the configured flux scheme.

use rayon::prelude::*;

use crate::basis::{default_rule, project_1d, Basis1D};
use crate::characteristic::{frozen_eigenstructure, interp_transform, moment_transform, InterpSampler};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flux::{interface_flux_1d, FluxContext, FluxScheme};
use crate::limiter::{
    kxrcf_flag, reconstruct_1d, tvb_corrections_1d, CharTransformKind, Indicator, LimiterConfig, LimiterKind, Tables1D,
};
use crate::mesh::{ghost_state, reflect, Boundaries, BoundaryKind, Mesh1D, Side};
use crate::models::{Model, State};
use crate::quadrature::QuadratureRule;

/// Outcome of one limiter application.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LimitStats {
    /// Troubled flags per `(cell, component)` (cell-major).
    pub mask: Vec<bool>,
    /// Number of cells with at least one troubled component.
    pub troubled_cells: usize,
    /// Number of interface freezes that fell back to cell-mean averages.
    pub freeze_fallbacks: usize,
}

/// Limited coefficients of one cell plus its number of freeze fallbacks
/// (`None` when the cell was left untouched).
pub(crate) type CellUpdate = Option<(Vec<f64>, usize)>;

/// A spatial DG discretisation usable by the time integrators.
pub trait SpatialOperator: Sync {
    /// Equation model.
    fn model(&self) -> &Model;
    /// Number of cells.
    fn n_cells(&self) -> usize;
    /// A zero field of the right shape.
    fn zeros(&self) -> Field;
    /// Semi-discrete right-hand side `L_h(U, t)`.
    fn residual(&self, field: &Field, t: f64, out: &mut Field) -> Result<()>;
    /// Applies the configured limiter in place.
    fn limit(&self, field: &mut Field, t: f64) -> Result<LimitStats>;
    /// Stable time step for CFL number `cfl`.
    fn stable_dt(&self, field: &Field, cfl: f64, t: f64) -> f64;
}

/// Adds a location to inadmissible-state errors.
pub(crate) fn with_context(e: Error, ctx: impl FnOnce() -> String) -> Error {
    match e {
        Error::Inadmissible { state, context } if context.is_empty() => Error::Inadmissible { state, context: ctx() },
        other => other,
    }
}

/// State of all components at one point: `Σ_ℓ α_ℓ row_ℓ · scale`.
#[inline]
pub(crate) fn eval_state(cell: &[f64], n_comp: usize, n_modes: usize, row: &[f64], scale: f64) -> State {
    let mut u = [0.0; 4];
    for c in 0..n_comp {
        let coeffs = &cell[c * n_modes..(c + 1) * n_modes];
        let mut s = 0.0;
        for l in 0..n_modes {
            s += coeffs[l] * row[l];
        }
        u[c] = s * scale;
    }
    u
}

/// FVS-DG operator on a uniform 1D mesh.
#[derive(Clone, Debug)]
pub struct Dg1D {
    /// Mesh.
    pub mesh: Mesh1D,
    /// Equation model.
    pub model: Model,
    /// Numerical flux.
    pub scheme: FluxScheme,
    /// Boundary conditions (left/right).
    pub bc: Boundaries,
    /// Modal basis.
    pub basis: Basis1D,
    /// Limiter configuration.
    pub limiter: LimiterConfig,
    /// Step used when every wave speed vanishes.
    pub dt_max: f64,
    rule: QuadratureRule,
    phi: Vec<Vec<f64>>,
    dphi: Vec<Vec<f64>>,
    phi_left: Vec<f64>,
    phi_right: Vec<f64>,
    tables: Tables1D,
    sampler: Option<InterpSampler>,
}

impl Dg1D {
    /// Builds the operator; validates scheme/model/boundary compatibility.
    pub fn new(mesh: Mesh1D, model: Model, scheme: FluxScheme, bc: Boundaries, degree: usize) -> Result<Self> {
        if model.dim() != 1 {
            return Err(Error::Config(format!("model {} is not one-dimensional", model.name())));
        }
        scheme.check_compatible(&model)?;
        bc.validate(&model)?;
        let basis = Basis1D::new(degree);
        let rule = default_rule(degree);
        let phi = rule.points.iter().map(|&x| basis.eval_ref(x, 0)).collect();
        let dphi = rule.points.iter().map(|&x| basis.eval_ref(x, 1)).collect();
        let limiter = LimiterConfig::none();
        Ok(Self {
            mesh,
            model,
            scheme,
            bc,
            basis,
            limiter,
            dt_max: f64::INFINITY,
            rule,
            phi,
            dphi,
            phi_left: basis.eval_ref(-0.5, 0),
            phi_right: basis.eval_ref(0.5, 0),
            tables: Tables1D::new(degree, mesh.dx, &limiter),
            sampler: None,
        })
    }

    /// Installs a limiter configuration.
    pub fn with_limiter(mut self, cfg: LimiterConfig) -> Result<Self> {
        cfg.validate()?;
        self.limiter = cfg;
        self.tables = Tables1D::new(self.basis.degree, self.mesh.dx, &cfg);
        self.sampler = if cfg.transform == CharTransformKind::Interpolation {
            Some(InterpSampler::gauss_1d(self.basis.degree)?)
        } else {
            None
        };
        Ok(self)
    }

    /// Limiter tables for the current configuration.
    pub fn tables(&self) -> &Tables1D {
        &self.tables
    }

    /// L² projection of a pointwise function.
    pub fn project<F: Fn(f64) -> State>(&self, f: F) -> Field {
        project_1d(&self.mesh, &self.basis, self.model.n_comp(), f)
    }

    /// Solution value at a physical point of cell `i`.
    pub fn value_at(&self, field: &Field, i: usize, x: f64) -> State {
        let xi = (x - self.mesh.center(i)) / self.mesh.dx;
        let row = self.basis.eval_ref(xi, 0);
        eval_state(
            field.cell(i),
            field.n_comp,
            field.n_modes,
            &row,
            1.0 / self.mesh.dx.sqrt(),
        )
    }

    /// Cell-mean state of cell `i`.
    pub fn mean(&self, field: &Field, i: usize) -> State {
        let mut u = [0.0; 4];
        let s = 1.0 / self.mesh.dx.sqrt();
        for c in 0..field.n_comp {
            u[c] = field.coeffs(i, c)[0] * s;
        }
        u
    }

    /// Left and right traces of cell `i`.
    pub fn traces(&self, field: &Field, i: usize) -> (State, State) {
        let s = 1.0 / self.mesh.dx.sqrt();
        let cell = field.cell(i);
        (
            eval_state(cell, field.n_comp, field.n_modes, &self.phi_left, s),
            eval_state(cell, field.n_comp, field.n_modes, &self.phi_right, s),
        )
    }

    /// Quadrature rule used for volume integrals (points on `[−1/2, 1/2]`).
    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Exterior trace beyond a domain boundary (`side` is `Left` or `Right`).
    fn boundary_state(&self, side: Side, traces: &[(State, State)]) -> Result<State> {
        let n = self.mesh.n;
        let (interior, wrapped) = match side {
            Side::Left => (traces[0].0, traces[n - 1].1),
            _ => (traces[n - 1].1, traces[0].0),
        };
        ghost_state(self.bc.get(side), side.normal(), &interior, Some(&wrapped), &self.model)
    }

    /// Neighbour mean across `side` with boundary handling (copy or mirror).
    fn neighbor_mean(&self, means: &[State], i: usize, side: Side) -> Result<State> {
        match self.mesh.neighbor(i, side, &self.bc) {
            Some(j) => Ok(means[j]),
            None => match self.bc.get(side) {
                BoundaryKind::Reflective => reflect(&means[i], side.normal(), &self.model),
                _ => Ok(means[i]),
            },
        }
    }

    fn flux_context(&self, traces: &[(State, State)], t: f64) -> Result<FluxContext> {
        if !self.scheme.needs_global_bound() {
            return Ok(FluxContext::default());
        }
        let radii: Vec<Result<f64>> = traces
            .par_iter()
            .enumerate()
            .map(|(i, (l, r))| {
                let xl = self.mesh.interface(i);
                let a = self.model.eigen_normal(l, [1.0, 0.0], [xl, 0.0], t)?.spectral_radius();
                let b = self
                    .model
                    .eigen_normal(r, [1.0, 0.0], [xl + self.mesh.dx, 0.0], t)?
                    .spectral_radius();
                Ok(a.max(b))
            })
            .collect();
        let mut m = 0.0f64;
        for r in radii {
            m = m.max(r?);
        }
        Ok(FluxContext { global_m: m })
    }

    /// Numerical fluxes at all `N + 1` interfaces.
    pub fn interface_fluxes(&self, field: &Field, t: f64) -> Result<Vec<State>> {
        let n = self.mesh.n;
        let traces: Vec<(State, State)> = (0..n).into_par_iter().map(|i| self.traces(field, i)).collect();
        let ctx = self.flux_context(&traces, t)?;
        (0..=n)
            .into_par_iter()
            .map(|f| {
                let ul = if f > 0 {
                    traces[f - 1].1
                } else {
                    self.boundary_state(Side::Left, &traces)?
                };
                let ur = if f < n {
                    traces[f].0
                } else {
                    self.boundary_state(Side::Right, &traces)?
                };
                let x = self.mesh.interface(f);
                interface_flux_1d(&self.model, &self.scheme, &ul, &ur, x, t, &ctx)
                    .map_err(|e| with_context(e, || format!(" at interface {f} (x = {x})")))
            })
            .collect()
    }

    /// Troubled flags per `(cell, component)` from the KXRCF indicator.
    pub fn indicate_kxrcf(&self, field: &Field, t: f64) -> Result<Vec<bool>> {
        let n = self.mesh.n;
        let m = field.n_comp;
        let traces: Vec<(State, State)> = (0..n).map(|i| self.traces(field, i)).collect();
        let k = self.basis.degree;
        let h = 0.5 * self.mesh.dx;
        let s = 1.0 / self.mesh.dx.sqrt();
        let mut mask = vec![false; n * m];
        for i in 0..n {
            let mut jump = [0.0; 4];
            let mut measure = 0.0;
            for side in [Side::Left, Side::Right] {
                let (own, x) = match side {
                    Side::Left => (traces[i].0, self.mesh.interface(i)),
                    _ => (traces[i].1, self.mesh.interface(i + 1)),
                };
                let nrm = side.normal();
                let vn = if self.model.is_scalar() {
                    self.model.scalar_derivative(own[0], nrm, [x, 0.0], t)
                } else {
                    self.model.velocity(&own)[0] * nrm[0]
                };
                if vn >= 0.0 {
                    continue;
                }
                let nb = match self.mesh.neighbor(i, side, &self.bc) {
                    Some(j) => match side {
                        Side::Left => traces[j].1,
                        _ => traces[j].0,
                    },
                    None => ghost_state(self.bc.get(side), nrm, &own, None, &self.model)?,
                };
                measure += 1.0;
                for c in 0..m {
                    jump[c] += own[c] - nb[c];
                }
            }
            let cell = field.cell(i);
            let mut norm = [0.0f64; 4];
            for row in &self.phi {
                let u = eval_state(cell, m, field.n_modes, row, s);
                for c in 0..m {
                    norm[c] = norm[c].max(u[c].abs());
                }
            }
            for c in 0..m {
                mask[i * m + c] = kxrcf_flag(jump[c], measure, h, k, norm[c]);
            }
        }
        Ok(mask)
    }

    /// TVB-minmod troubled flags per `(cell, component)`.
    pub fn indicate_tvb(&self, field: &Field) -> Result<Vec<bool>> {
        let n = self.mesh.n;
        let m = field.n_comp;
        let means: Vec<State> = (0..n).map(|i| self.mean(field, i)).collect();
        let mut mask = vec![false; n * m];
        for i in 0..n {
            let l = self.neighbor_mean(&means, i, Side::Left)?;
            let r = self.neighbor_mean(&means, i, Side::Right)?;
            for c in 0..m {
                mask[i * m + c] =
                    tvb_corrections_1d(field.coeffs(i, c), l[c], r[c], &self.tables, self.limiter.tvb_m).changed;
            }
        }
        Ok(mask)
    }

    /// Limits one troubled cell componentwise in physical variables.
    fn limit_cell_physical(&self, field: &Field, i: usize, flags: &[bool], nb: (State, State)) -> Result<Vec<f64>> {
        let m = field.n_comp;
        let nm = field.n_modes;
        let mut out = field.cell(i).to_vec();
        for c in 0..m {
            if self.limiter.indicator == Indicator::Tvb && !flags[c] {
                continue;
            }
            let coeffs = field.coeffs(i, c);
            let corr = tvb_corrections_1d(coeffs, nb.0[c], nb.1[c], &self.tables, self.limiter.tvb_m);
            let new = reconstruct_1d(coeffs, (corr.left, corr.right), (nb.0[c], nb.1[c]), &self.tables)?;
            out[c * nm..(c + 1) * nm].copy_from_slice(&new);
        }
        Ok(out)
    }

    /// Limits one troubled cell in local characteristic variables (two interfaces, weight ½).
    fn limit_cell_characteristic(
        &self,
        field: &Field,
        i: usize,
        traces: &[(State, State)],
        means: &[State],
    ) -> Result<(Vec<f64>, usize)> {
        let m = field.n_comp;
        let nm = field.n_modes;
        let a = field.cell(i);
        let nb_l = self.neighbor_mean(means, i, Side::Left)?;
        let nb_r = self.neighbor_mean(means, i, Side::Right)?;
        let mut acc = vec![0.0; m * nm];
        let mut fallbacks = 0;
        for side in [Side::Left, Side::Right] {
            let j = self.mesh.neighbor(i, side, &self.bc);
            let (own_edge, other_edge) = match side {
                Side::Left => (traces[i].0, j.map(|j| traces[j].1)),
                _ => (traces[i].1, j.map(|j| traces[j].0)),
            };
            let other_mean = j.map_or(means[i], |j| means[j]);
            let (e, fb) = frozen_eigenstructure(
                &self.model,
                &own_edge,
                other_edge.as_ref(),
                &means[i],
                &other_mean,
                self.limiter.freeze,
                [1.0, 0.0],
            )?;
            fallbacks += fb as usize;
            let mut b = match &self.sampler {
                Some(s) => interp_transform(a, &e.l, m, nm, s)?,
                None => moment_transform(a, &e.l, m, nm),
            };
            let wl = e.to_characteristic(&nb_l);
            let wr = e.to_characteristic(&nb_r);
            for k in 0..m {
                let row = &b[k * nm..(k + 1) * nm];
                let corr = tvb_corrections_1d(row, wl[k], wr[k], &self.tables, self.limiter.tvb_m);
                if self.limiter.indicator == Indicator::Tvb && !corr.changed {
                    continue;
                }
                let new = reconstruct_1d(row, (corr.left, corr.right), (wl[k], wr[k]), &self.tables)?;
                b[k * nm..(k + 1) * nm].copy_from_slice(&new);
            }
            let back = match &self.sampler {
                Some(s) => interp_transform(&b, &e.r, m, nm, s)?,
                None => moment_transform(&b, &e.r, m, nm),
            };
            for (acc, v) in acc.iter_mut().zip(back) {
                *acc += 0.5 * v;
            }
        }
        // Cell means are invariant under L then R; restore them exactly.
        for c in 0..m {
            acc[c * nm] = a[c * nm];
        }
        Ok((acc, fallbacks))
    }

    /// Applies the configured indicator and limiter, returning statistics.
    pub fn apply_limiter(&self, field: &mut Field, t: f64) -> Result<LimitStats> {
        let n = self.mesh.n;
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
        let traces: Vec<(State, State)> = if characteristic {
            (0..n).map(|i| self.traces(field, i)).collect()
        } else {
            Vec::new()
        };
        let snapshot = &*field;
        let updates: Vec<Result<CellUpdate>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let flags = &mask[i * m..(i + 1) * m];
                if !flags.iter().any(|&f| f) {
                    return Ok(None);
                }
                if characteristic {
                    self.limit_cell_characteristic(snapshot, i, &traces, &means).map(Some)
                } else {
                    let nb = (
                        self.neighbor_mean(&means, i, Side::Left)?,
                        self.neighbor_mean(&means, i, Side::Right)?,
                    );
                    Ok(Some((self.limit_cell_physical(snapshot, i, flags, nb)?, 0)))
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

impl SpatialOperator for Dg1D {
    fn model(&self) -> &Model {
        &self.model
    }

    fn n_cells(&self) -> usize {
        self.mesh.n
    }

    fn zeros(&self) -> Field {
        Field::zeros(self.mesh.n, self.model.n_comp(), self.basis.n_modes())
    }

    fn residual(&self, field: &Field, t: f64, out: &mut Field) -> Result<()> {
        let fluxes = self.interface_fluxes(field, t)?;
        let m = field.n_comp;
        let nm = field.n_modes;
        let dx = self.mesh.dx;
        let s = 1.0 / dx.sqrt();
        let sq = dx.sqrt();
        let cl = field.cell_len();
        out.data.par_chunks_mut(cl).enumerate().for_each(|(i, res)| {
            res.iter_mut().for_each(|v| *v = 0.0);
            let cell = field.cell(i);
            let xc = self.mesh.center(i);
            for (q, &xi) in self.rule.points.iter().enumerate() {
                let u = eval_state(cell, m, nm, &self.phi[q], s);
                let x = xc + xi * dx;
                let f = self.model.flux(&u, x, t);
                let w = self.rule.weights[q];
                let src = self.model.source(&u, [x, 0.0], t);
                for c in 0..m {
                    let r = &mut res[c * nm..(c + 1) * nm];
                    let fw = w * f[c] * s;
                    for l in 0..nm {
                        r[l] += fw * self.dphi[q][l];
                    }
                    if let Some(src) = src {
                        let sw = w * src[c] * sq;
                        for l in 0..nm {
                            r[l] += sw * self.phi[q][l];
                        }
                    }
                }
            }
            let (fl, fr) = (fluxes[i], fluxes[i + 1]);
            for c in 0..m {
                let r = &mut res[c * nm..(c + 1) * nm];
                for l in 0..nm {
                    r[l] -= (fr[c] * self.phi_right[l] - fl[c] * self.phi_left[l]) * s;
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
        let lam = (0..self.mesh.n)
            .map(|i| {
                let u = self.mean(field, i);
                self.model.max_speed_n(&u, [1.0, 0.0], [self.mesh.center(i), 0.0], t)
            })
            .fold(0.0f64, f64::max);
        if lam > 0.0 && lam.is_finite() {
            cfl * self.mesh.dx / lam
        } else {
            self.dt_max
        }
    }
}
