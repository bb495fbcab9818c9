//! Experiment runner: configuration, discretisation set-up, error norms,
//! convergence studies and CSV / gnuplot output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::cases::{find_case, Case, Domain};
use crate::dg::{Dg1D, SpatialOperator};
use crate::dg2d::Dg2D;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flux::FluxScheme;
use crate::limiter::{CharTransformKind, FreezeAverage, Indicator, LimiterConfig, LimiterKind};
use crate::mesh::{Mesh1D, Mesh2D};
use crate::models::{Model, State};
use crate::time::{integrate_partial, Integrator, RunReport, TimeConfig};

/// Fully resolved run configuration (case defaults plus overrides).
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Case identifier.
    pub case: String,
    /// Polynomial degree `K`.
    pub k: usize,
    /// Cells in x.
    pub nx: usize,
    /// Cells in y (2D only).
    pub ny: usize,
    /// Numerical flux.
    pub scheme: FluxScheme,
    /// Time integrator.
    pub integrator: Integrator,
    /// CFL number.
    pub cfl: f64,
    /// Final time.
    pub t_end: f64,
    /// Limiter configuration.
    pub limiter: LimiterConfig,
    /// Output directory (no files are written when `None`).
    pub out: Option<PathBuf>,
    /// Worker threads (`None`: library default).
    pub threads: Option<usize>,
    /// Random seed recorded with the run.
    pub seed: u64,
    /// Mesh sequence for convergence studies (cells in x; y scales alike).
    pub meshes: Vec<usize>,
    /// Cells of the reference mesh used when the case has no exact solution.
    pub reference: Option<usize>,
    /// Report domain-averaged norms (`L¹/|Ω|`, `L²/|Ω|^{1/2}`) in convergence studies.
    pub normalize: bool,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(Error::Config(format!("invalid boolean `{value}` for `{key}`"))),
    }
}

/// Parses a flux name for `model`.
///
/// For scalar laws `sw` selects the scalar Steger–Warming flux, `llf` the
/// local Lax–Friedrichs flux and `lf` the global Lax–Friedrichs flux with
/// constant `speed_bound` (local when no bound is known); `llf:α` and
/// `lf-global:M` fix the dissipation constant explicitly.
pub fn parse_flux(s: &str, model: &Model, speed_bound: Option<f64>) -> Result<FluxScheme> {
    let s = s.trim().to_ascii_lowercase();
    if let Some((name, v)) = s.split_once(':') {
        let v: f64 = parse_num("flux", v)?;
        return match name {
            "llf" | "lf" if model.is_scalar() => Ok(FluxScheme::ScalarLlf { alpha: Some(v) }),
            "lf-global" => Ok(FluxScheme::LaxFriedrichsGlobal { m: Some(v) }),
            "sw" | "steger-warming" => Ok(FluxScheme::StegerWarming { delta: v }),
            _ => Err(Error::Config(format!("unknown flux scheme `{s}`"))),
        };
    }
    if model.is_scalar() {
        match s.as_str() {
            "sw" | "steger-warming" | "scalar-sw" => return Ok(FluxScheme::ScalarSw),
            "llf" => return Ok(FluxScheme::ScalarLlf { alpha: None }),
            "lf" | "lax-friedrichs" | "lf-global" => return Ok(FluxScheme::ScalarLlf { alpha: speed_bound }),
            _ => {}
        }
    }
    s.parse()
}

impl RunConfig {
    /// Default configuration of a registered case.
    pub fn for_case(id: &str) -> Result<Self> {
        let c = find_case(id)?;
        let d = c.defaults;
        Ok(Self {
            case: id.to_string(),
            k: d.k,
            nx: d.nx,
            ny: d.ny,
            scheme: d.scheme,
            integrator: d.integrator,
            cfl: d.cfl,
            t_end: d.t_end,
            limiter: d.limiter,
            out: None,
            threads: None,
            seed: 0,
            meshes: Vec::new(),
            reference: None,
            normalize: false,
        })
    }

    /// The registered case.
    pub fn case_def(&self) -> Result<Case> {
        find_case(&self.case)
    }

    /// Applies one `key = value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        match key.to_ascii_lowercase().as_str() {
            "case" => {
                let keep = (self.out.clone(), self.threads, self.seed);
                *self = Self::for_case(value)?;
                (self.out, self.threads, self.seed) = keep;
            }
            "k" | "degree" => self.k = parse_num(key, value)?,
            "n" => {
                self.nx = parse_num(key, value)?;
                self.ny = self.nx;
            }
            "nx" => self.nx = parse_num(key, value)?,
            "ny" => self.ny = parse_num(key, value)?,
            "flux" => {
                let case = self.case_def()?;
                self.scheme = parse_flux(value, &case.model, case.speed_bound)?
            }
            "integrator" | "rk" => self.integrator = value.parse()?,
            "cfl" => self.cfl = parse_num(key, value)?,
            "t_end" | "tend" | "t" => self.t_end = parse_num(key, value)?,
            "limiter" => {
                let (kind, weights) = match value.to_ascii_lowercase().as_str() {
                    "none" | "off" => (LimiterKind::None, None),
                    "tvb" | "classical" | "classical-tvb" => (LimiterKind::ClassicalTvb, None),
                    "istvb" | "is-tvb" | "is" => (LimiterKind::IsTvb, Some((1.0, 0.0))),
                    "isl2" | "isl2tvb" | "is-l2" | "is-l2-tvb" => (LimiterKind::IsL2Tvb, None),
                    _ => return Err(Error::Config(format!("unknown limiter `{value}`"))),
                };
                self.limiter.kind = kind;
                if let Some((a, b)) = weights {
                    self.limiter.w_is = a;
                    self.limiter.w_l2 = b;
                }
            }
            "wis" | "w_is" => self.limiter.w_is = parse_num(key, value)?,
            "wl2" | "w_l2" => self.limiter.w_l2 = parse_num(key, value)?,
            "m" | "tvb_m" | "tvbm" => self.limiter.tvb_m = parse_num(key, value)?,
            "indicator" => {
                self.limiter.indicator = match value.to_ascii_lowercase().as_str() {
                    "tvb" | "minmod" => Indicator::Tvb,
                    "kxrcf" => Indicator::Kxrcf,
                    "none" | "always" | "all" => Indicator::AlwaysOn,
                    _ => return Err(Error::Config(format!("unknown indicator `{value}`"))),
                }
            }
            "characteristic" | "char" => self.limiter.characteristic = parse_bool(key, value)?,
            "freeze" => {
                self.limiter.freeze = match value.to_ascii_lowercase().as_str() {
                    "arithmetic" | "mean" => FreezeAverage::Arithmetic,
                    "roe" => FreezeAverage::Roe,
                    _ => return Err(Error::Config(format!("unknown freeze average `{value}`"))),
                }
            }
            "transform" => {
                self.limiter.transform = match value.to_ascii_lowercase().as_str() {
                    "moment" => CharTransformKind::Moment,
                    "interpolation" | "interp" => CharTransformKind::Interpolation,
                    _ => return Err(Error::Config(format!("unknown transform `{value}`"))),
                }
            }
            "out" | "output" => self.out = Some(PathBuf::from(value)),
            "threads" => self.threads = Some(parse_num(key, value)?),
            "seed" => self.seed = parse_num(key, value)?,
            "meshes" => {
                self.meshes = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_num(key, s))
                    .collect::<Result<_>>()?
            }
            "reference" => self.reference = Some(parse_num(key, value)?),
            "normalize" | "normalise" => self.normalize = parse_bool(key, value)?,
            _ => return Err(Error::Config(format!("unknown configuration key `{key}`"))),
        }
        Ok(())
    }

    /// Parses a line-based `key = value` configuration (`#` starts a comment).
    ///
    /// The `case` key is applied first so that the remaining keys override its defaults.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", no + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let case = pairs
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case("case"))
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Config("configuration must name a `case`".into()))?;
        let mut cfg = Self::for_case(&case)?;
        for (k, v) in pairs.iter().filter(|(k, _)| !k.eq_ignore_ascii_case("case")) {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    /// Checks the invariants of a run configuration.
    pub fn validate(&self) -> Result<()> {
        let case = self.case_def()?;
        if self.cfl.is_nan() || self.cfl <= 0.0 {
            return Err(Error::Config(format!("CFL must be positive, got {}", self.cfl)));
        }
        if self.nx < 4 || (case.domain.dim() == 2 && self.ny < 4) {
            return Err(Error::Config("meshes need at least 4 cells per direction".into()));
        }
        if self.t_end < 0.0 || !self.t_end.is_finite() {
            return Err(Error::Config(format!("invalid end time {}", self.t_end)));
        }
        if self.k > 10 {
            return Err(Error::Config(format!(
                "degree K = {} exceeds the supported maximum 10",
                self.k
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("thread count must be positive".into()));
        }
        self.limiter.validate()?;
        self.scheme.check_compatible(&case.model)?;
        Ok(())
    }

    /// Time-stepping parameters.
    pub fn time_config(&self) -> TimeConfig {
        TimeConfig::new(self.integrator, self.cfl, self.t_end)
    }
}

/// A DG discretisation of a case in one or two dimensions.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)] // built once per run; boxing buys nothing
pub enum Discretization {
    /// Interval mesh.
    D1(Dg1D),
    /// Rectangular mesh.
    D2(Dg2D),
}

impl Discretization {
    /// Builds the operator for `case` with `nx × ny` cells using the settings in `cfg`.
    pub fn build(case: &Case, cfg: &RunConfig, nx: usize, ny: usize) -> Result<Self> {
        match case.domain {
            Domain::Interval(a, b) => {
                let mesh = Mesh1D::new(a, b, nx)?;
                Ok(Self::D1(
                    Dg1D::new(mesh, case.model, cfg.scheme, case.bc, cfg.k)?.with_limiter(cfg.limiter)?,
                ))
            }
            Domain::Rectangle(x, y) => {
                let mesh = Mesh2D::new(x, y, nx, ny)?;
                Ok(Self::D2(
                    Dg2D::new(mesh, case.model, cfg.scheme, case.bc, cfg.k)?.with_limiter(cfg.limiter)?,
                ))
            }
        }
    }

    /// The operator as a trait object.
    pub fn op(&self) -> &dyn SpatialOperator {
        match self {
            Self::D1(d) => d,
            Self::D2(d) => d,
        }
    }

    /// Equation model.
    pub fn model(&self) -> &Model {
        self.op().model()
    }

    /// L² projection of an initial condition.
    pub fn project(&self, ic: fn(f64, f64) -> State) -> Field {
        match self {
            Self::D1(d) => d.project(|x| ic(x, 0.0)),
            Self::D2(d) => d.project(ic),
        }
    }

    /// Cell centers.
    pub fn centers(&self) -> Vec<[f64; 2]> {
        match self {
            Self::D1(d) => (0..d.mesh.n).map(|i| [d.mesh.center(i), 0.0]).collect(),
            Self::D2(d) => (0..d.mesh.n_cells()).map(|c| d.mesh.center(c)).collect(),
        }
    }

    /// Solution value at a physical point of a known cell.
    pub fn value_in_cell(&self, field: &Field, cell: usize, p: [f64; 2]) -> State {
        match self {
            Self::D1(d) => d.value_at(field, cell, p[0]),
            Self::D2(d) => d.value_at(field, cell, p),
        }
    }

    /// Cell containing a physical point (clamped to the domain).
    pub fn locate(&self, p: [f64; 2]) -> usize {
        let idx = |x: f64, x0: f64, h: f64, n: usize| (((x - x0) / h).floor().max(0.0) as usize).min(n - 1);
        match self {
            Self::D1(d) => idx(p[0], d.mesh.a, d.mesh.dx, d.mesh.n),
            Self::D2(d) => {
                let m = &d.mesh;
                m.index(idx(p[0], m.x0, m.dx, m.nx), idx(p[1], m.y0, m.dy, m.ny))
            }
        }
    }

    /// Solution value at any point of the domain.
    pub fn evaluate(&self, field: &Field, p: [f64; 2]) -> State {
        self.value_in_cell(field, self.locate(p), p)
    }

    /// Volume quadrature samples `(cell, point, physical weight)` in cell order.
    pub fn quadrature_points(&self) -> Vec<(usize, [f64; 2], f64)> {
        let mut out = Vec::new();
        match self {
            Self::D1(d) => {
                for i in 0..d.mesh.n {
                    let xc = d.mesh.center(i);
                    for (q, &xi) in d.rule().points.iter().enumerate() {
                        out.push((i, [xc + xi * d.mesh.dx, 0.0], d.rule().weights[q] * d.mesh.dx));
                    }
                }
            }
            Self::D2(d) => {
                let m = &d.mesh;
                for c in 0..m.n_cells() {
                    let [xc, yc] = m.center(c);
                    for &(xi, eta, w) in d.volume_rule() {
                        out.push((c, [xc + xi * m.dx, yc + eta * m.dy], w * m.area()));
                    }
                }
            }
        }
        out
    }

    /// Cell-mean states.
    pub fn means(&self, field: &Field) -> Vec<State> {
        match self {
            Self::D1(d) => (0..d.mesh.n).map(|i| d.mean(field, i)).collect(),
            Self::D2(d) => (0..d.mesh.n_cells()).map(|c| d.mean(field, c)).collect(),
        }
    }
}

/// Per-component error norms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorNorms {
    /// `∫ |e|`.
    pub l1: Vec<f64>,
    /// `(∫ |e|²)^{1/2}`.
    pub l2: Vec<f64>,
    /// Maximum of `|e|` over quadrature points.
    pub linf: Vec<f64>,
}

/// Norm selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    /// L¹.
    L1,
    /// L².
    L2,
    /// L∞.
    LInf,
}

impl ErrorNorms {
    /// Domain-averaged norms: `L¹/|Ω|` and `L²/|Ω|^{1/2}`; `L∞` is unchanged.
    pub fn per_unit_measure(&self, measure: f64) -> Self {
        Self {
            l1: self.l1.iter().map(|v| v / measure).collect(),
            l2: self.l2.iter().map(|v| v / measure.sqrt()).collect(),
            linf: self.linf.clone(),
        }
    }

    /// Values of one norm for every component.
    pub fn get(&self, norm: Norm) -> &[f64] {
        match norm {
            Norm::L1 => &self.l1,
            Norm::L2 => &self.l2,
            Norm::LInf => &self.linf,
        }
    }
}

/// Error norms of `field` against a reference function, by volume quadrature
/// with `K + 2` points per direction.
pub fn error_norms<F>(disc: &Discretization, field: &Field, reference: F) -> Result<ErrorNorms>
where
    F: Fn([f64; 2]) -> Result<State>,
{
    let m = field.n_comp;
    let mut n = ErrorNorms {
        l1: vec![0.0; m],
        l2: vec![0.0; m],
        linf: vec![0.0; m],
    };
    for (cell, p, w) in disc.quadrature_points() {
        let uh = disc.value_in_cell(field, cell, p);
        let ue = reference(p)?;
        for c in 0..m {
            let e = (uh[c] - ue[c]).abs();
            n.l1[c] += w * e;
            n.l2[c] += w * e * e;
            n.linf[c] = n.linf[c].max(e);
        }
    }
    n.l2.iter_mut().for_each(|v| *v = v.sqrt());
    Ok(n)
}

/// Component names used in output headers.
pub fn component_names(model: &Model) -> Vec<&'static str> {
    match model {
        Model::Euler1D { .. } => vec!["rho", "rhou", "E"],
        Model::Euler2D { .. } => vec!["rho", "rhou", "rhov", "E"],
        Model::Swe1D { .. } => vec!["h", "hu"],
        Model::Swe2D { .. } => vec!["h", "hu", "hv"],
        _ => vec!["u"],
    }
}

/// Result of one run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    /// Configuration used.
    pub config: RunConfig,
    /// Discretisation.
    pub disc: Discretization,
    /// Final (or last good) state.
    pub field: Field,
    /// Integration statistics.
    pub report: RunReport,
    /// Errors against the exact solution, when the case has one and the run finished.
    pub errors: Option<ErrorNorms>,
    /// Failure that stopped the run early.
    pub failure: Option<Error>,
}

/// Runs a configuration: projection, integration, error norms and (if an
/// output directory is set) CSV / gnuplot output.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let case = cfg.case_def()?;
    let disc = Discretization::build(&case, cfg, cfg.nx, cfg.ny)?;
    let u0 = disc.project(case.ic);
    let out = integrate_partial(disc.op(), u0, &cfg.time_config());
    let errors = match (out.error.is_none(), case.exact) {
        (true, Some(exact)) => {
            let t = out.report.t_final;
            Some(error_norms(&disc, &out.field, |p| exact(p[0], p[1], t))?)
        }
        _ => None,
    };
    let outcome = RunOutcome {
        config: cfg.clone(),
        disc,
        field: out.field,
        report: out.report,
        errors,
        failure: out.error,
    };
    if let Some(dir) = &cfg.out {
        write_outputs(&outcome, dir)?;
    }
    Ok(outcome)
}

/// Errors and orders over a mesh sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    /// Case identifier.
    pub case: String,
    /// Component names.
    pub components: Vec<&'static str>,
    /// Cells in x for every mesh.
    pub meshes: Vec<usize>,
    /// Error norms per mesh.
    pub errors: Vec<ErrorNorms>,
    /// Reference mesh size when no exact solution was available.
    pub reference: Option<usize>,
}

impl ConvergenceTable {
    /// Orders `log₂(e_coarse / e_fine)` between consecutive meshes.
    pub fn orders(&self, norm: Norm, comp: usize) -> Vec<f64> {
        self.errors
            .windows(2)
            .zip(self.meshes.windows(2))
            .map(|(e, n)| {
                let ratio = n[1] as f64 / n[0] as f64;
                (e[0].get(norm)[comp] / e[1].get(norm)[comp]).ln() / ratio.ln()
            })
            .collect()
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{:<6}{:<12}", "var", "norm");
        for n in &self.meshes {
            let _ = write!(s, "{:>14}", n);
        }
        s.push('\n');
        for (c, name) in self.components.iter().enumerate() {
            for (norm, label) in [(Norm::LInf, "Linf"), (Norm::L2, "L2"), (Norm::L1, "L1")] {
                let _ = write!(s, "{:<6}{:<12}", name, format!("{label}-error"));
                for e in &self.errors {
                    let _ = write!(s, "{:>14}", sci(e.get(norm)[c]));
                }
                s.push('\n');
                let _ = write!(s, "{:<6}{:<12}{:>14}", "", format!("{label}-order"), "-");
                for o in self.orders(norm, c) {
                    let _ = write!(s, "{:>14.4}", o);
                }
                s.push('\n');
            }
        }
        s
    }

    /// CSV with one row per mesh and columns `N,<comp>_<norm>...`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("N");
        for name in &self.components {
            for label in ["Linf", "L2", "L1"] {
                let _ = write!(s, ",{name}_{label}");
            }
        }
        s.push('\n');
        for (n, e) in self.meshes.iter().zip(&self.errors) {
            let _ = write!(s, "{n}");
            for c in 0..self.components.len() {
                for norm in [Norm::LInf, Norm::L2, Norm::L1] {
                    let _ = write!(s, ",{:.10e}", e.get(norm)[c]);
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Scientific notation with four decimals and a two-digit signed exponent (`1.2471E-07`).
pub fn sci(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.4E}");
    }
    let e = v.abs().log10().floor() as i32;
    let mut m = v / 10f64.powi(e);
    let mut e = e;
    if format!("{:.4}", m.abs()).starts_with("10") {
        m /= 10.0;
        e += 1;
    }
    format!("{m:.4}E{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

fn scaled_run(cfg: &RunConfig, n: usize) -> Result<(Discretization, Field)> {
    let case = cfg.case_def()?;
    let ny = (cfg.ny * n).div_ceil(cfg.nx.max(1)).max(1);
    let mut c = cfg.clone();
    c.nx = n;
    c.ny = if case.domain.dim() == 2 { ny } else { c.ny };
    c.out = None;
    c.validate()?;
    let disc = Discretization::build(&case, &c, c.nx, c.ny)?;
    let u0 = disc.project(case.ic);
    let r = integrate_partial(disc.op(), u0, &c.time_config());
    match r.error {
        Some(e) => Err(e),
        None => Ok((disc, r.field)),
    }
}

/// Runs the configuration on every mesh of `meshes` (cells in x, each
/// typically double the last; y is scaled proportionally in 2D).
///
/// Errors are measured against the exact solution, or, when the case has
/// none, against a run on `cfg.reference` cells (default: twice the finest mesh).
pub fn convergence_study(cfg: &RunConfig, meshes: &[usize]) -> Result<ConvergenceTable> {
    if meshes.len() < 2 {
        return Err(Error::Config("a convergence study needs at least two meshes".into()));
    }
    let case = cfg.case_def()?;
    let reference = match case.exact {
        Some(_) => None,
        None => {
            let n = cfg.reference.unwrap_or(2 * meshes.iter().copied().max().unwrap_or(1));
            Some((n, scaled_run(cfg, n)?))
        }
    };
    let mut errors = Vec::with_capacity(meshes.len());
    for &n in meshes {
        let (disc, field) = scaled_run(cfg, n)?;
        let e = match (&reference, case.exact) {
            (Some((_, (rd, rf))), _) => error_norms(&disc, &field, |p| Ok(rd.evaluate(rf, p)))?,
            (None, Some(exact)) => error_norms(&disc, &field, |p| exact(p[0], p[1], cfg.t_end))?,
            (None, None) => unreachable!("reference computed when no exact solution exists"),
        };
        errors.push(if cfg.normalize {
            e.per_unit_measure(case.domain.measure())
        } else {
            e
        });
    }
    let table = ConvergenceTable {
        case: cfg.case.clone(),
        components: component_names(&case.model),
        meshes: meshes.to_vec(),
        errors,
        reference: reference.map(|r| r.0),
    };
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("convergence.txt"), table.to_text())?;
        fs::write(dir.join("convergence.csv"), table.to_csv())?;
    }
    Ok(table)
}

fn write_rows(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| format!("{v:.12e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `solution.csv` (cell centers), `solution_quad.csv` (quadrature
/// points), `troubled_steps.csv`, `troubled_cells.csv`, `errors.csv` (when
/// available) and a gnuplot script `plot.gp`.
pub fn write_outputs(outcome: &RunOutcome, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let disc = &outcome.disc;
    let field = &outcome.field;
    let names = component_names(disc.model());
    let dim = match disc {
        Discretization::D1(_) => 1,
        Discretization::D2(_) => 2,
    };
    let mut header: Vec<String> = if dim == 1 {
        vec!["x".into()]
    } else {
        vec!["x".into(), "y".into()]
    };
    header.extend(names.iter().map(|s| s.to_string()));
    let row = |p: [f64; 2], u: State| {
        let mut r = p[..dim].to_vec();
        r.extend_from_slice(&u[..names.len()]);
        r
    };
    let centers = disc.centers();
    write_rows(
        &dir.join("solution.csv"),
        &header,
        centers
            .iter()
            .enumerate()
            .map(|(c, &p)| row(p, disc.value_in_cell(field, c, p))),
    )?;
    write_rows(
        &dir.join("solution_quad.csv"),
        &header,
        disc.quadrature_points()
            .into_iter()
            .map(|(c, p, _)| row(p, disc.value_in_cell(field, c, p))),
    )?;
    write_rows(
        &dir.join("troubled_steps.csv"),
        &["step".into(), "troubled_cells".into()],
        outcome
            .report
            .troubled_per_step
            .iter()
            .enumerate()
            .map(|(i, &n)| vec![i as f64, n as f64]),
    )?;
    let m = field.n_comp;
    let mask = &outcome.report.final_limit.mask;
    let mut th: Vec<String> = header[..dim].to_vec();
    th.push("troubled".into());
    write_rows(
        &dir.join("troubled_cells.csv"),
        &th,
        centers.iter().enumerate().map(|(c, p)| {
            let flag = mask.get(c * m..(c + 1) * m).is_some_and(|f| f.iter().any(|&b| b));
            let mut r = p[..dim].to_vec();
            r.push(if flag { 1.0 } else { 0.0 });
            r
        }),
    )?;
    if let Some(e) = &outcome.errors {
        let mut s = String::from("component,L1,L2,Linf\n");
        for (c, name) in names.iter().enumerate() {
            let _ = writeln!(s, "{name},{:.10e},{:.10e},{:.10e}", e.l1[c], e.l2[c], e.linf[c]);
        }
        fs::write(dir.join("errors.csv"), s)?;
    }
    let mut gp = String::new();
    let _ = writeln!(gp, "set datafile separator ','");
    let _ = writeln!(gp, "set key autotitle columnhead");
    let _ = writeln!(
        gp,
        "set title '{} (K = {}, t = {})'",
        outcome.config.case, outcome.config.k, outcome.report.t_final
    );
    for (c, name) in names.iter().enumerate() {
        let _ = writeln!(gp, "set terminal pngcairo size 900,600");
        let _ = writeln!(gp, "set output '{name}.png'");
        if dim == 1 {
            let _ = writeln!(gp, "plot 'solution_quad.csv' using 1:{} with lines", c + 2);
        } else {
            let _ = writeln!(gp, "set view map");
            let _ = writeln!(
                gp,
                "splot 'solution.csv' using 1:2:{} with points pointtype 5 pointsize 0.5 palette",
                c + 3
            );
        }
    }
    fs::write(dir.join("plot.gp"), gp)?;
    Ok(())
}
