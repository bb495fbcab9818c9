//! Numerical fluxes: eigenvalue splittings (Steger–Warming, Lax–Friedrichs),
//! Mach-number splittings (van Leer, AUSM) and scalar upwind/LLF fluxes.
//!
//! Every flux-vector splitting produces a pair `(F⁺(U), F⁻(U))` with
//! `F⁺ + F⁻ = F_n(U)`; the interface flux is `F̂ = F⁺(U_int) + F⁻(U_ext)` where
//! `n` points from the interior to the exterior state.

use crate::error::{Error, Result};
use crate::models::{Model, State};

/// Numerical flux selection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FluxScheme {
    /// Jacobian splitting `λ± = (λ ± √(λ² + δ²))/2`.
    StegerWarming {
        /// Smoothing parameter (0 gives `(λ ± |λ|)/2`).
        delta: f64,
    },
    /// Jacobian splitting `λ± = (λ ± M)/2` with `M` the spectral radius of each side's state.
    LaxFriedrichsLocal,
    /// Jacobian splitting `λ± = (λ ± M)/2` with one global bound `M`.
    LaxFriedrichsGlobal {
        /// Fixed bound; `None` recomputes the maximum over all traces at every stage.
        m: Option<f64>,
    },
    /// van Leer Mach-number splitting (Euler and shallow water).
    VanLeer,
    /// Liou–Steffen AUSM advection/pressure splitting (Euler and shallow water).
    Ausm,
    /// Scalar Steger–Warming flux `½(f(u_R)+f(u_L) − (|a_R|u_R − |a_L|u_L))`, `a = K f'(u)`.
    ScalarSw,
    /// Scalar (local) Lax–Friedrichs flux `½(f(u_L)+f(u_R) − α(u_R − u_L))`.
    ScalarLlf {
        /// Fixed global `α`; `None` uses the local maximum of `|f'|` between the two states.
        alpha: Option<f64>,
    },
}

impl FluxScheme {
    /// Short identifier.
    pub fn name(&self) -> &'static str {
        match self {
            FluxScheme::StegerWarming { .. } => "steger-warming",
            FluxScheme::LaxFriedrichsLocal => "lax-friedrichs-local",
            FluxScheme::LaxFriedrichsGlobal { .. } => "lax-friedrichs-global",
            FluxScheme::VanLeer => "van-leer",
            FluxScheme::Ausm => "ausm",
            FluxScheme::ScalarSw => "scalar-steger-warming",
            FluxScheme::ScalarLlf { .. } => "scalar-llf",
        }
    }

    /// Whether the scheme needs a per-stage global wave-speed bound.
    pub fn needs_global_bound(&self) -> bool {
        matches!(self, FluxScheme::LaxFriedrichsGlobal { m: None })
    }

    /// Checks that the scheme is defined for `model`.
    pub fn check_compatible(&self, model: &Model) -> Result<()> {
        let ok = match self {
            FluxScheme::StegerWarming { .. }
            | FluxScheme::LaxFriedrichsLocal
            | FluxScheme::LaxFriedrichsGlobal { .. } => !model.is_scalar() || model.scalar_homogeneity().is_some(),
            FluxScheme::VanLeer | FluxScheme::Ausm => model.is_euler() || model.is_swe(),
            FluxScheme::ScalarSw => model.scalar_homogeneity().is_some(),
            FluxScheme::ScalarLlf { .. } => model.is_scalar(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Incompatible {
                scheme: self.name(),
                model: model.name(),
            })
        }
    }
}

impl std::str::FromStr for FluxScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sw" | "steger-warming" => Ok(FluxScheme::StegerWarming { delta: 0.0 }),
            "lf" | "lf-local" | "lax-friedrichs" => Ok(FluxScheme::LaxFriedrichsLocal),
            "lf-global" => Ok(FluxScheme::LaxFriedrichsGlobal { m: None }),
            "vanleer" | "van-leer" | "vl" => Ok(FluxScheme::VanLeer),
            "ausm" => Ok(FluxScheme::Ausm),
            "scalar-sw" => Ok(FluxScheme::ScalarSw),
            "llf" => Ok(FluxScheme::ScalarLlf { alpha: None }),
            _ => Err(Error::Config(format!("unknown flux scheme `{s}`"))),
        }
    }
}

/// A flux-vector split `(F⁺, F⁻)` of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitFlux {
    /// Positive (right-going) part.
    pub plus: State,
    /// Negative (left-going) part.
    pub minus: State,
}

/// Per-evaluation data shared by all interfaces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxContext {
    /// Global Lax–Friedrichs bound used when the scheme does not fix one.
    pub global_m: f64,
}

impl Default for FluxContext {
    fn default() -> Self {
        Self { global_m: 0.0 }
    }
}

/// Steger–Warming eigenvalue split `λ± = (λ ± √(λ² + δ²))/2`.
pub fn split_eigen_sw(lambda: &[f64], delta: f64) -> (Vec<f64>, Vec<f64>) {
    lambda.iter().map(|&l| sw_pair(l, delta)).unzip()
}

fn sw_pair(l: f64, delta: f64) -> (f64, f64) {
    let r = if delta == 0.0 {
        l.abs()
    } else {
        (l * l + delta * delta).sqrt()
    };
    (0.5 * (l + r), 0.5 * (l - r))
}

/// Lax–Friedrichs eigenvalue split `λ± = (λ ± M)/2`; requires `M ≥ max|λ|`.
pub fn split_eigen_lf(lambda: &[f64], m: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let lmax = lambda.iter().fold(0.0f64, |a, l| a.max(l.abs()));
    if m < lmax {
        return Err(Error::SplittingBound { m, lambda: lmax });
    }
    Ok(lambda.iter().map(|&l| (0.5 * (l + m), 0.5 * (l - m))).unzip())
}

/// Sign-split Mach numbers `(M⁺, M⁻)` shared by van Leer and AUSM.
pub fn mach_split(mach: f64) -> (f64, f64) {
    if mach >= 1.0 {
        (mach, 0.0)
    } else if mach <= -1.0 {
        (0.0, mach)
    } else {
        (0.25 * (mach + 1.0).powi(2), -0.25 * (mach - 1.0).powi(2))
    }
}

/// Pressure split `(P⁺, P⁻)` of the AUSM scheme.
pub fn pressure_split(p: f64, mach: f64) -> (f64, f64) {
    if mach >= 1.0 {
        (p, 0.0)
    } else if mach <= -1.0 {
        (0.0, p)
    } else {
        (0.5 * p * (1.0 + mach), 0.5 * p * (1.0 - mach))
    }
}

/// Splits the normal flux of one state according to `scheme`.
pub fn split(
    model: &Model,
    scheme: &FluxScheme,
    u: &State,
    n: [f64; 2],
    pos: [f64; 2],
    t: f64,
    ctx: &FluxContext,
) -> Result<SplitFlux> {
    match *scheme {
        FluxScheme::StegerWarming { delta } => jacobian_split(model, u, n, pos, t, |l| Ok(sw_pair(l, delta))),
        FluxScheme::ScalarSw => {
            scheme.check_compatible(model)?;
            jacobian_split(model, u, n, pos, t, |l| Ok(sw_pair(l, 0.0)))
        }
        FluxScheme::LaxFriedrichsLocal => {
            let e = model.eigen_normal(u, n, pos, t)?;
            let m = e.spectral_radius();
            jacobian_split(model, u, n, pos, t, |l| Ok((0.5 * (l + m), 0.5 * (l - m))))
        }
        FluxScheme::LaxFriedrichsGlobal { m } => {
            let m = m.unwrap_or(ctx.global_m);
            jacobian_split(model, u, n, pos, t, |l| {
                if l.abs() > m {
                    Err(Error::SplittingBound { m, lambda: l.abs() })
                } else {
                    Ok((0.5 * (l + m), 0.5 * (l - m)))
                }
            })
        }
        FluxScheme::VanLeer => van_leer_split(model, u, n),
        FluxScheme::Ausm => ausm_split(model, u, n),
        FluxScheme::ScalarLlf { alpha } => {
            if !model.is_scalar() {
                return Err(Error::Incompatible {
                    scheme: scheme.name(),
                    model: model.name(),
                });
            }
            let f = model.flux_n(u, n, pos, t)[0];
            let a = alpha.unwrap_or_else(|| model.scalar_derivative(u[0], n, pos, t).abs());
            Ok(SplitFlux {
                plus: [0.5 * (f + a * u[0]), 0.0, 0.0, 0.0],
                minus: [0.5 * (f - a * u[0]), 0.0, 0.0, 0.0],
            })
        }
    }
}

fn jacobian_split<F>(model: &Model, u: &State, n: [f64; 2], pos: [f64; 2], t: f64, pair: F) -> Result<SplitFlux>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let e = model.eigen_normal(u, n, pos, t)?;
    let mut lp = [0.0; 4];
    let mut lm = [0.0; 4];
    for k in 0..e.m {
        let (p, m) = pair(e.lambda[k])?;
        lp[k] = p;
        lm[k] = m;
    }
    let w = e.to_characteristic(u);
    let mut wp = [0.0; 4];
    let mut wm = [0.0; 4];
    for k in 0..e.m {
        wp[k] = lp[k] * w[k];
        wm[k] = lm[k] * w[k];
    }
    Ok(SplitFlux {
        plus: e.from_characteristic(&wp),
        minus: e.from_characteristic(&wm),
    })
}

/// Normal/tangential decomposition of a system state.
struct Rotated {
    rho: f64,
    qn: f64,
    qt: f64,
    a: f64,
    p: f64,
    h: f64,
}

fn rotate(model: &Model, u: &State, n: [f64; 2]) -> Result<Rotated> {
    model.check_admissible(u)?;
    let [vx, vy] = model.velocity(u);
    let (tx, ty) = (-n[1], n[0]);
    let p = model.pressure(u);
    let e_total = if model.is_euler() { u[model.n_comp() - 1] } else { 0.0 };
    Ok(Rotated {
        rho: u[0],
        qn: vx * n[0] + vy * n[1],
        qt: vx * tx + vy * ty,
        a: model.sound_speed(u),
        p,
        h: (e_total + p) / u[0],
    })
}

/// Builds a physical flux vector from normal-frame parts
/// `(mass, normal momentum, tangential momentum, energy)`.
fn unrotate(model: &Model, mass: f64, mn: f64, mt: f64, energy: f64, n: [f64; 2]) -> State {
    let (tx, ty) = (-n[1], n[0]);
    match model.dim() {
        1 => {
            // In 1D `n = (±1, 0)`: the x-momentum flux is `mn · n_x`.
            let mut f = [mass, mn * n[0], 0.0, 0.0];
            if model.is_euler() {
                f[2] = energy;
            }
            f
        }
        _ => {
            let mut f = [mass, mn * n[0] + mt * tx, mn * n[1] + mt * ty, 0.0];
            if model.is_euler() {
                f[3] = energy;
            }
            f
        }
    }
}

/// van Leer splitting in the face-normal frame.
fn van_leer_split(model: &Model, u: &State, n: [f64; 2]) -> Result<SplitFlux> {
    if !(model.is_euler() || model.is_swe()) {
        return Err(Error::Incompatible {
            scheme: "van-leer",
            model: model.name(),
        });
    }
    let s = rotate(model, u, n)?;
    let full = model.flux_n(u, n, [0.0, 0.0], 0.0);
    let mach = s.qn / s.a;
    if mach >= 1.0 {
        return Ok(SplitFlux {
            plus: full,
            minus: [0.0; 4],
        });
    }
    if mach <= -1.0 {
        return Ok(SplitFlux {
            plus: [0.0; 4],
            minus: full,
        });
    }
    let gamma = if model.is_euler() {
        match *model {
            Model::Euler1D { gamma } | Model::Euler2D { gamma } => gamma,
            _ => unreachable!(),
        }
    } else {
        2.0
    };
    let part = |sign: f64| -> State {
        let (mp, mm) = mach_split(mach);
        let fm = s.rho * s.a * if sign > 0.0 { mp } else { mm };
        let w = (gamma - 1.0) * s.qn + sign * 2.0 * s.a;
        let mn = fm * w / gamma;
        let mt = fm * s.qt;
        let energy = fm * (w * w / (2.0 * (gamma * gamma - 1.0)) + 0.5 * s.qt * s.qt);
        unrotate(model, fm, mn, mt, energy, n)
    };
    Ok(SplitFlux {
        plus: part(1.0),
        minus: part(-1.0),
    })
}

/// AUSM splitting: `ρ a M± (1, u, v, H) + P± (0, n_x, n_y, 0)`.
fn ausm_split(model: &Model, u: &State, n: [f64; 2]) -> Result<SplitFlux> {
    if !(model.is_euler() || model.is_swe()) {
        return Err(Error::Incompatible {
            scheme: "ausm",
            model: model.name(),
        });
    }
    let s = rotate(model, u, n)?;
    let mach = s.qn / s.a;
    let (mp, mm) = mach_split(mach);
    let (pp, pm) = pressure_split(s.p, mach);
    let part = |mflux: f64, p: f64| -> State {
        let fm = s.rho * s.a * mflux;
        unrotate(model, fm, fm * s.qn + p, fm * s.qt, fm * s.h, n)
    };
    Ok(SplitFlux {
        plus: part(mp, pp),
        minus: part(mm, pm),
    })
}

/// Largest `|f'|` of a scalar normal flux over the interval between two states.
fn scalar_local_alpha(model: &Model, ul: f64, ur: f64, n: [f64; 2], pos: [f64; 2], t: f64) -> f64 {
    let d = |u: f64| model.scalar_derivative(u, n, pos, t).abs();
    let mut a = d(ul).max(d(ur));
    if matches!(model, Model::BuckleyLeverett) {
        // Non-convex flux: sample the interval.
        const SAMPLES: usize = 64;
        for k in 1..SAMPLES {
            let s = k as f64 / SAMPLES as f64;
            a = a.max(d(ul + s * (ur - ul)));
        }
    }
    a
}

/// Scalar LLF flux `½(f(u_L) + f(u_R) − α (u_R − u_L))` in direction `n`.
pub fn scalar_llf_flux(model: &Model, ul: f64, ur: f64, n: [f64; 2], pos: [f64; 2], t: f64, alpha: Option<f64>) -> f64 {
    let fl = model.flux_n(&[ul, 0.0, 0.0, 0.0], n, pos, t)[0];
    let fr = model.flux_n(&[ur, 0.0, 0.0, 0.0], n, pos, t)[0];
    let a = alpha.unwrap_or_else(|| scalar_local_alpha(model, ul, ur, n, pos, t));
    0.5 * (fl + fr - a * (ur - ul))
}

/// Scalar Steger–Warming flux `½(f(u_R) + f(u_L) − (|a_R| u_R − |a_L| u_L))`, `a = K f_n'`.
pub fn scalar_sw_flux(model: &Model, ul: f64, ur: f64, n: [f64; 2], pos: [f64; 2], t: f64) -> Result<f64> {
    let k = model.scalar_homogeneity().ok_or(Error::Incompatible {
        scheme: "scalar-steger-warming",
        model: model.name(),
    })?;
    let fl = model.flux_n(&[ul, 0.0, 0.0, 0.0], n, pos, t)[0];
    let fr = model.flux_n(&[ur, 0.0, 0.0, 0.0], n, pos, t)[0];
    let al = k * model.scalar_derivative(ul, n, pos, t);
    let ar = k * model.scalar_derivative(ur, n, pos, t);
    Ok(0.5 * (fr + fl - (ar.abs() * ur - al.abs() * ul)))
}

/// Interface flux `F̂ = F⁺(U_int) + F⁻(U_ext)` through a face with normal `n`
/// pointing from the interior to the exterior state.
#[allow(clippy::too_many_arguments)]
pub fn numerical_flux(
    model: &Model,
    scheme: &FluxScheme,
    u_int: &State,
    u_ext: &State,
    n: [f64; 2],
    pos: [f64; 2],
    t: f64,
    ctx: &FluxContext,
) -> Result<State> {
    if let FluxScheme::ScalarLlf { alpha } = *scheme {
        let f = scalar_llf_flux(model, u_int[0], u_ext[0], n, pos, t, alpha);
        return Ok([f, 0.0, 0.0, 0.0]);
    }
    let a = split(model, scheme, u_int, n, pos, t, ctx)?;
    let b = split(model, scheme, u_ext, n, pos, t, ctx)?;
    let mut f = [0.0; 4];
    for k in 0..model.n_comp() {
        f[k] = a.plus[k] + b.minus[k];
    }
    Ok(f)
}

/// 1D interface flux with `U_L` on the left and `U_R` on the right.
pub fn interface_flux_1d(
    model: &Model,
    scheme: &FluxScheme,
    ul: &State,
    ur: &State,
    x: f64,
    t: f64,
    ctx: &FluxContext,
) -> Result<State> {
    numerical_flux(model, scheme, ul, ur, [1.0, 0.0], [x, 0.0], t, ctx)
}
