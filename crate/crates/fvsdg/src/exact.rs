//! Closed-form and characteristic-based exact solutions of the smooth test problems.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::models::{State, GAMMA};

/// Tolerance of the characteristic root solves.
pub const ROOT_TOL: f64 = 1e-14;
/// Maximum number of Newton iterations before pure bisection takes over.
pub const MAX_NEWTON: usize = 50;

/// Conservative 1D Euler state from `(ρ, u, p)` with `γ = 1.4`.
pub fn euler1d_state(rho: f64, u: f64, p: f64) -> State {
    [rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u, 0.0]
}

/// Conservative 2D Euler state from `(ρ, u, v, p)` with `γ = 1.4`.
pub fn euler2d_state(rho: f64, u: f64, v: f64, p: f64) -> State {
    [rho, rho * u, rho * v, p / (GAMMA - 1.0) + 0.5 * rho * (u * u + v * v)]
}

/// Smooth 1D Euler translation: `ρ = 1 + 0.2 cos(π(x + 0.7t))`, `u = −0.7`, `p = 1`.
pub fn euler1d_smooth(x: f64, t: f64) -> State {
    euler1d_state(1.0 + 0.2 * (PI * (x + 0.7 * t)).cos(), -0.7, 1.0)
}

/// Smooth 2D Euler translation: `ρ = 1 + 0.2 cos(π(x + 0.7t) + π(y − 0.3t))`, `(u, v) = (−0.7, 0.3)`, `p = 1`.
pub fn euler2d_smooth(x: f64, y: f64, t: f64) -> State {
    euler2d_state(
        1.0 + 0.2 * (PI * (x + 0.7 * t) + PI * (y - 0.3 * t)).cos(),
        -0.7,
        0.3,
        1.0,
    )
}

/// `u_t + (sin(ωt) u)_x = 0`, `u₀ = sin x`: `u = sin(x + (cos(ωt) − 1)/ω)`.
pub fn advection_sin_t(x: f64, t: f64, omega: f64) -> f64 {
    (x + ((omega * t).cos() - 1.0) / omega).sin()
}

/// `u_t + (sin(x) u)_x = 0`, `u₀ = 1`.
///
/// Equals `sin(2 atan(e^{−t} tan(x/2))) / sin x`, written in the
/// singularity-free form `e^{−t} / (cos²(x/2) + e^{−2t} sin²(x/2))`.
pub fn advection_sin_x(x: f64, t: f64) -> f64 {
    let a = (-t).exp();
    let (s, c) = (0.5 * x).sin_cos();
    a / (c * c + a * a * s * s)
}

/// Safeguarded Newton iteration for a monotonically increasing `g` on `[lo, hi]`
/// with `g(lo) ≤ 0 ≤ g(hi)`.
fn monotone_root<G, D>(g: G, dg: D, mut lo: f64, mut hi: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (glo, ghi) = (g(lo), g(hi));
    if glo > 0.0 || ghi < 0.0 {
        return Err(Error::ExactSolution(format!(
            "root not bracketed on [{lo}, {hi}] (g = {glo}, {ghi})"
        )));
    }
    let mut s = 0.5 * (lo + hi);
    for _ in 0..(MAX_NEWTON + 200) {
        let v = g(s);
        if v == 0.0 {
            return Ok(s);
        }
        if v < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let d = dg(s);
        let newton = s - v / d;
        let next = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - s).abs() <= ROOT_TOL * (1.0 + s.abs()) || hi - lo <= ROOT_TOL {
            return Ok(next);
        }
        s = next;
    }
    Err(Error::ExactSolution(
        "characteristic root iteration did not converge".into(),
    ))
}

/// Entropy solution of `u_t + (u²/2)_x = 0` with `u₀ = sin x` (period `2π`).
///
/// The foot `x*` of the characteristic `x = x* + t sin x*` is found by a
/// safeguarded Newton iteration. After the shock forms at `t = 1` (it stays at
/// `x = π` by symmetry) the root is taken on the monotone branch of the side
/// containing `x`.
pub fn burgers_sin(x: f64, t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::ExactSolution("negative time".into()));
    }
    if t == 0.0 {
        return Ok(x.sin());
    }
    let two_pi = 2.0 * PI;
    let xr = x.rem_euclid(two_pi);
    if t < 1.0 {
        let g = |s: f64| s + t * s.sin() - xr;
        let dg = |s: f64| 1.0 + t * s.cos();
        return Ok(monotone_root(g, dg, xr - t, xr + t)?.sin());
    }
    if xr == 0.0 || (xr - PI).abs() < 1e-15 {
        return Ok(0.0);
    }
    // Odd symmetry about x = π: u(x) = −u(2π − x).
    let (xl, sign) = if xr < PI { (xr, 1.0) } else { (two_pi - xr, -1.0) };
    let s_max = (-1.0 / t).acos().min(PI);
    let g = |s: f64| s + t * s.sin() - xl;
    let dg = |s: f64| 1.0 + t * s.cos();
    Ok(sign * monotone_root(g, dg, 0.0, s_max)?.sin())
}

/// 2D Burgers `U_t + (U²/2)_x + (U²/2)_y = 0` with `U₀ = sin(π(x + y)/2)`.
///
/// With `ξ = x + y` the solution satisfies `ξ = ξ* + 2 t ũ₀(ξ*)`; scaling by
/// `π/2` reduces it to [`burgers_sin`] at time `π t`.
pub fn burgers2d_smooth(x: f64, y: f64, t: f64) -> Result<f64> {
    burgers_sin(0.5 * PI * (x + y), PI * t)
}
