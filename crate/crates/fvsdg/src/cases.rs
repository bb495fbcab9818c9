//! Registry of named test cases with their default discretisation settings.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact::{
    advection_sin_t, advection_sin_x, burgers2d_smooth, burgers_sin, euler1d_smooth, euler1d_state, euler2d_smooth,
    euler2d_state,
};
use crate::flux::FluxScheme;
use crate::limiter::{Indicator, LimiterConfig};
use crate::mesh::{Boundaries, BoundaryKind};
use crate::models::{AdvectionCoeff, Bottom, Model, State, Velocity2D, GAMMA, GRAVITY};
use crate::time::Integrator;

/// Computational domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// Interval `[a, b]`.
    Interval(f64, f64),
    /// Rectangle `[x0, x1] × [y0, y1]`.
    Rectangle([f64; 2], [f64; 2]),
}

impl Domain {
    /// Spatial dimension.
    pub fn dim(&self) -> usize {
        match self {
            Domain::Interval(..) => 1,
            Domain::Rectangle(..) => 2,
        }
    }

    /// Length or area of the domain.
    pub fn measure(&self) -> f64 {
        match *self {
            Domain::Interval(a, b) => b - a,
            Domain::Rectangle(x, y) => (x[1] - x[0]) * (y[1] - y[0]),
        }
    }
}

/// Initial condition `U₀(x, y)` (`y` is ignored in 1D).
pub type InitialCondition = fn(f64, f64) -> State;
/// Exact solution `U(x, y, t)` (`y` is ignored in 1D).
pub type ExactSolution = fn(f64, f64, f64) -> Result<State>;

/// Default discretisation for a case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseDefaults {
    /// Polynomial degree.
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
}

/// A named test problem.
#[derive(Clone, Copy, Debug)]
pub struct Case {
    /// Identifier used on the command line.
    pub id: &'static str,
    /// Short description.
    pub title: &'static str,
    /// Reduced-size variant whose results are not meant to match the published figures.
    pub desk_variant: bool,
    /// Equation model.
    pub model: Model,
    /// Domain.
    pub domain: Domain,
    /// Boundary conditions.
    pub bc: Boundaries,
    /// Initial condition.
    pub ic: InitialCondition,
    /// Exact solution, when available.
    pub exact: Option<ExactSolution>,
    /// Default settings.
    pub defaults: CaseDefaults,
    /// A priori bound on `|f'(u)|` over the whole run (scalar laws), used as
    /// the dissipation constant of the global Lax–Friedrichs flux.
    pub speed_bound: Option<f64>,
}

fn scalar(v: f64) -> State {
    [v, 0.0, 0.0, 0.0]
}

fn ic_euler1d_smooth(x: f64, _: f64) -> State {
    euler1d_smooth(x, 0.0)
}
fn ex_euler1d_smooth(x: f64, _: f64, t: f64) -> Result<State> {
    Ok(euler1d_smooth(x, t))
}
fn ic_euler2d_smooth(x: f64, y: f64) -> State {
    euler2d_smooth(x, y, 0.0)
}
fn ex_euler2d_smooth(x: f64, y: f64, t: f64) -> Result<State> {
    Ok(euler2d_smooth(x, y, t))
}
fn ic_swe1d_smooth(x: f64, _: f64) -> State {
    let c = (2.0 * PI * x).cos();
    [5.0 + c.exp(), c.sin(), 0.0, 0.0]
}
fn ic_sod(x: f64, _: f64) -> State {
    if x < 0.0 {
        euler1d_state(1.0, 0.0, 1.0)
    } else {
        euler1d_state(0.125, 0.0, 0.1)
    }
}
fn ic_lax(x: f64, _: f64) -> State {
    if x < 0.0 {
        euler1d_state(0.445, 0.698, 3.528)
    } else {
        euler1d_state(0.5, 0.0, 0.571)
    }
}
fn ic_shu_osher(x: f64, _: f64) -> State {
    if x < -4.0 {
        euler1d_state(3.857143, 2.629369, 10.333333)
    } else {
        euler1d_state(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
    }
}
fn ic_blast(x: f64, _: f64) -> State {
    let p = if x < 0.1 {
        1e3
    } else if x <= 0.9 {
        1e-2
    } else {
        1e2
    };
    euler1d_state(1.0, 0.0, p)
}
fn ic_dambreak(x: f64, _: f64) -> State {
    [if x < 0.0 { 1.0 } else { 0.1 }, 0.0, 0.0, 0.0]
}
fn quadrant<T: Copy>(x: f64, y: f64, mid: f64, ne: T, nw: T, sw: T, se: T) -> T {
    match (x > mid, y > mid) {
        (true, true) => ne,
        (false, true) => nw,
        (false, false) => sw,
        (true, false) => se,
    }
}
fn riemann_13(x: f64, y: f64, mid: f64) -> State {
    let (r, u, v, p) = quadrant(
        x,
        y,
        mid,
        (0.5313, 0.0, 0.0, 0.4),
        (1.0, 0.7276, 0.0, 1.0),
        (0.8, 0.0, 0.0, 1.0),
        (1.0, 0.0, 0.7276, 1.0),
    );
    euler2d_state(r, u, v, p)
}
fn ic_riemann1(x: f64, y: f64) -> State {
    riemann_13(x, y, 0.05)
}
fn ic_riemann2(x: f64, y: f64) -> State {
    let (r, u, v, p) = quadrant(
        x,
        y,
        0.5,
        (1.1, 0.0, 0.0, 1.1),
        (0.5065, 0.8939, 0.0, 0.35),
        (1.1, 0.8939, 0.8939, 1.1),
        (0.5065, 0.0, 0.8939, 0.35),
    );
    euler2d_state(r, u, v, p)
}
fn ic_riemann3(x: f64, y: f64) -> State {
    riemann_13(x, y, 0.5)
}
fn ic_sin(x: f64, _: f64) -> State {
    scalar(x.sin())
}
fn ex_burgers_sin(x: f64, _: f64, t: f64) -> Result<State> {
    Ok(scalar(burgers_sin(x, t)?))
}
fn ic_burgers2d(x: f64, y: f64) -> State {
    scalar((0.5 * PI * (x + y)).sin())
}
fn ex_burgers2d(x: f64, y: f64, t: f64) -> Result<State> {
    Ok(scalar(burgers2d_smooth(x, y, t)?))
}
fn ic_burgers2d_riemann(x: f64, y: f64) -> State {
    scalar(quadrant(x, y, 0.05, -1.0, -0.2, 0.5, 0.8))
}
fn ic_buckley_leverett(x: f64, _: f64) -> State {
    scalar(if (-0.5..=0.0).contains(&x) { 1.0 } else { 0.0 })
}
/// Slotted disk, cone and smooth hump (each of radius 0.15 on the unit
/// square), mapped affinely onto `[−π, π]²`.
fn ic_swirl(x: f64, y: f64) -> State {
    let (sx, sy) = ((x + PI) / (2.0 * PI), (y + PI) / (2.0 * PI));
    let r0 = 0.15;
    let dist = |cx: f64, cy: f64| ((sx - cx).powi(2) + (sy - cy).powi(2)).sqrt() / r0;
    let disk = dist(0.5, 0.75);
    if disk <= 1.0 && ((sx - 0.5).abs() >= 0.025 || sy >= 0.85) {
        return scalar(1.0);
    }
    let cone = dist(0.5, 0.25);
    if cone <= 1.0 {
        return scalar(1.0 - cone);
    }
    let hump = dist(0.25, 0.5);
    if hump <= 1.0 {
        return scalar(0.25 * (1.0 + (PI * hump).cos()));
    }
    scalar(0.0)
}
fn ex_advection_sin_t(x: f64, _: f64, t: f64) -> Result<State> {
    Ok(scalar(advection_sin_t(x, t, PI)))
}
fn ic_one(_: f64, _: f64) -> State {
    scalar(1.0)
}
fn ex_advection_sin_x(x: f64, _: f64, t: f64) -> Result<State> {
    Ok(scalar(advection_sin_x(x, t)))
}

const SW: FluxScheme = FluxScheme::StegerWarming { delta: 0.0 };

fn defaults(k: usize, n: usize, scheme: FluxScheme, integrator: Integrator, cfl: f64, t_end: f64) -> CaseDefaults {
    CaseDefaults {
        k,
        nx: n,
        ny: n,
        scheme,
        integrator,
        cfl,
        t_end,
        limiter: LimiterConfig::none(),
    }
}

fn limited(mut d: CaseDefaults, limiter: LimiterConfig) -> CaseDefaults {
    d.limiter = limiter;
    d
}

/// All registered cases.
pub fn case_registry() -> Vec<Case> {
    use Integrator::{Rk4, TvdRk3};
    let periodic = Boundaries::uniform(BoundaryKind::Periodic);
    let free = Boundaries::uniform(BoundaryKind::Free);
    let wall = Boundaries::uniform(BoundaryKind::Reflective);
    let euler1 = Model::Euler1D { gamma: GAMMA };
    let euler2 = Model::Euler2D { gamma: GAMMA };
    let sys_is = |m: f64| LimiterConfig::is_tvb(m).with_characteristic(true);
    let sys_isl2 = |a: f64, b: f64, m: f64| LimiterConfig::is_l2(a, b, m).with_characteristic(true);
    let case = |id, title, model, domain, bc, ic, exact, defaults| Case {
        id,
        title,
        desk_variant: false,
        model,
        domain,
        bc,
        ic,
        exact,
        defaults,
        speed_bound: None,
    };
    let mut lax_desk = case(
        "lax-desk",
        "Lax shock tube, reduced 400-cell variant (not comparable with the 2000-cell reference figure)",
        euler1,
        Domain::Interval(-5.0, 5.0),
        free,
        ic_lax as InitialCondition,
        None,
        limited(defaults(3, 400, FluxScheme::VanLeer, TvdRk3, 0.1, 1.3), sys_is(1.0)),
    );
    lax_desk.desk_variant = true;
    let mut cases = vec![
        case(
            "euler1d-smooth",
            "1D Euler smooth density wave, rho = 1 + 0.2 cos(pi (x + 0.7 t))",
            euler1,
            Domain::Interval(0.0, 2.0),
            periodic,
            ic_euler1d_smooth,
            Some(ex_euler1d_smooth as ExactSolution),
            defaults(2, 10, FluxScheme::Ausm, TvdRk3, 0.1, 1.0),
        ),
        case(
            "swe1d-smooth",
            "1D shallow water smooth data over z0 = sin^2(pi x) (reference-mesh errors)",
            Model::Swe1D {
                g: GRAVITY,
                bottom: Bottom::SinSquared,
            },
            Domain::Interval(0.0, 1.0),
            periodic,
            ic_swe1d_smooth,
            None,
            defaults(2, 50, FluxScheme::VanLeer, TvdRk3, 0.01, 0.075),
        ),
        case(
            "euler2d-smooth",
            "2D Euler smooth density wave on [0,2]x[-1,1]",
            euler2,
            Domain::Rectangle([0.0, 2.0], [-1.0, 1.0]),
            periodic,
            ic_euler2d_smooth,
            Some(ex_euler2d_smooth as ExactSolution),
            defaults(3, 10, FluxScheme::Ausm, Rk4, 0.01, 1.0),
        ),
        case(
            "sod",
            "Sod shock tube",
            euler1,
            Domain::Interval(-1.0, 1.0),
            free,
            ic_sod,
            None,
            limited(defaults(3, 400, SW, TvdRk3, 0.05, 0.2), sys_is(1.0)),
        ),
        case(
            "lax",
            "Lax shock tube",
            euler1,
            Domain::Interval(-5.0, 5.0),
            free,
            ic_lax,
            None,
            limited(defaults(3, 2000, FluxScheme::VanLeer, TvdRk3, 0.1, 1.3), sys_is(1.0)),
        ),
        lax_desk,
        case(
            "shu-osher",
            "Shu-Osher shock/entropy-wave interaction",
            euler1,
            Domain::Interval(-5.0, 5.0),
            free,
            ic_shu_osher,
            None,
            limited(defaults(5, 500, SW, TvdRk3, 0.1, 1.8), sys_isl2(0.75, 0.25, 1.0)),
        ),
        case(
            "blast",
            "Interacting blast waves with reflective walls",
            euler1,
            Domain::Interval(0.0, 1.0),
            wall,
            ic_blast,
            None,
            limited(
                defaults(2, 800, FluxScheme::Ausm, TvdRk3, 0.005, 0.026),
                sys_isl2(0.8, 0.2, 1.0),
            ),
        ),
        case(
            "dambreak",
            "Shallow water dam break on a flat bed",
            Model::Swe1D {
                g: GRAVITY,
                bottom: Bottom::Flat,
            },
            Domain::Interval(-1.0, 1.0),
            free,
            ic_dambreak,
            None,
            limited(
                defaults(4, 200, FluxScheme::VanLeer, TvdRk3, 0.1, 0.2),
                sys_isl2(0.75, 0.25, 0.0),
            ),
        ),
        case(
            "riemann2d-1",
            "2D Riemann problem, configuration 1 on [0,0.1]^2",
            euler2,
            Domain::Rectangle([0.0, 0.1], [0.0, 0.1]),
            free,
            ic_riemann1,
            None,
            limited(defaults(3, 40, SW, TvdRk3, 0.2, 0.022), sys_isl2(0.8, 0.2, 1.0)),
        ),
        case(
            "riemann2d-2",
            "2D Riemann problem, configuration 2 on [0,1]^2",
            euler2,
            Domain::Rectangle([0.0, 1.0], [0.0, 1.0]),
            free,
            ic_riemann2,
            None,
            limited(defaults(2, 100, FluxScheme::Ausm, TvdRk3, 0.2, 0.25), sys_is(1.0)),
        ),
        case(
            "riemann2d-3",
            "2D Riemann problem, configuration 3 on [0,1]^2",
            euler2,
            Domain::Rectangle([0.0, 1.0], [0.0, 1.0]),
            free,
            ic_riemann3,
            None,
            limited(defaults(2, 100, SW, TvdRk3, 0.2, 0.3), sys_isl2(0.8, 0.2, 1.0)),
        ),
        case(
            "burgers1d-sin",
            "1D Burgers, u0 = sin x, shock at t = 1 (limited, no indicator)",
            Model::Burgers1D,
            Domain::Interval(0.0, 2.0 * PI),
            periodic,
            ic_sin,
            Some(ex_burgers_sin as ExactSolution),
            limited(
                defaults(3, 20, FluxScheme::ScalarLlf { alpha: None }, TvdRk3, 0.1, 2.0),
                LimiterConfig::is_tvb(1.0).with_indicator(Indicator::AlwaysOn),
            ),
        ),
        case(
            "burgers1d-smooth",
            "1D Burgers, u0 = sin x, smooth up to t = 0.6",
            Model::Burgers1D,
            Domain::Interval(0.0, 2.0 * PI),
            periodic,
            ic_sin,
            Some(ex_burgers_sin as ExactSolution),
            defaults(5, 20, FluxScheme::ScalarSw, Rk4, 0.05, 0.6),
        ),
        case(
            "burgers2d-smooth",
            "2D Burgers, U0 = sin(pi (x + y) / 2), smooth up to t = 0.5/pi",
            Model::Burgers2D,
            Domain::Rectangle([0.0, 4.0], [0.0, 4.0]),
            periodic,
            ic_burgers2d,
            Some(ex_burgers2d as ExactSolution),
            defaults(2, 15, FluxScheme::ScalarSw, TvdRk3, 0.05, 0.5 / PI),
        ),
        case(
            "burgers2d-shock",
            "2D Burgers, U0 = sin(pi (x + y) / 2), shock present at t = 1.5/pi",
            Model::Burgers2D,
            Domain::Rectangle([0.0, 4.0], [0.0, 4.0]),
            periodic,
            ic_burgers2d,
            Some(ex_burgers2d as ExactSolution),
            limited(
                defaults(3, 50, FluxScheme::ScalarLlf { alpha: None }, TvdRk3, 0.1, 1.5 / PI),
                LimiterConfig::is_tvb(1.0),
            ),
        ),
        case(
            "burgers2d-riemann",
            "2D Burgers four-quadrant Riemann problem",
            Model::Burgers2D,
            Domain::Rectangle([0.0, 0.1], [0.0, 0.1]),
            free,
            ic_burgers2d_riemann,
            None,
            limited(
                defaults(3, 50, FluxScheme::ScalarSw, TvdRk3, 0.1, 0.05),
                LimiterConfig::is_tvb(1.0),
            ),
        ),
        case(
            "buckley-leverett",
            "Buckley-Leverett with a square pulse",
            Model::BuckleyLeverett,
            Domain::Interval(-1.0, 1.0),
            periodic,
            ic_buckley_leverett,
            None,
            limited(
                defaults(3, 80, FluxScheme::ScalarLlf { alpha: Some(2.4) }, TvdRk3, 0.1, 0.4),
                LimiterConfig::is_tvb(1.0),
            ),
        ),
        case(
            "swirl-deform",
            "Swirling deformation flow, period T = 0.75",
            Model::Advection2D(Velocity2D::Swirl { period: 0.75 }),
            Domain::Rectangle([-PI, PI], [-PI, PI]),
            periodic,
            ic_swirl,
            None,
            limited(
                defaults(3, 120, FluxScheme::ScalarSw, TvdRk3, 0.1, 0.75),
                LimiterConfig::is_l2(0.75, 0.25, 1.0),
            ),
        ),
        case(
            "advection-sin-t",
            "u_t + (sin(pi t) u)_x = 0, u0 = sin x, ten periods",
            Model::Advection1D(AdvectionCoeff::SinT { omega: PI }),
            Domain::Interval(0.0, 2.0 * PI),
            periodic,
            ic_sin,
            Some(ex_advection_sin_t as ExactSolution),
            defaults(2, 20, FluxScheme::ScalarSw, TvdRk3, 0.1, 20.0),
        ),
        case(
            "advection-sin-x",
            "u_t + (sin(x) u)_x = 0, u0 = 1",
            Model::Advection1D(AdvectionCoeff::SinX),
            Domain::Interval(0.0, 2.0 * PI),
            periodic,
            ic_one,
            Some(ex_advection_sin_x as ExactSolution),
            defaults(5, 20, FluxScheme::ScalarSw, Rk4, 0.05, 1.0),
        ),
    ];
    // |u| ≤ 1 for the sine data (maximum principle) and |a| ≤ 1 for the
    // sin(πt) and sin(x) speeds.
    for c in &mut cases {
        if matches!(
            c.id,
            "burgers1d-sin"
                | "burgers1d-smooth"
                | "burgers2d-smooth"
                | "burgers2d-shock"
                | "advection-sin-t"
                | "advection-sin-x"
        ) {
            c.speed_bound = Some(1.0);
        }
    }
    cases
}

/// Looks up a case by identifier.
pub fn find_case(id: &str) -> Result<Case> {
    case_registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Config(format!("unknown case `{id}`")))
}
