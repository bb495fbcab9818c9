//! Equation models: physical fluxes, eigenstructures, Roe averages and source terms.
//!
//! States are fixed-size `[f64; 4]` arrays whose first [`Model::n_comp`]
//! entries are meaningful; unused entries are kept at zero.

use crate::error::{Error, Result};

/// Conservative state vector (padded to four components).
pub type State = [f64; 4];
/// Dense 4×4 matrix (row-major, padded).
pub type Mat = [[f64; 4]; 4];

/// Default ratio of specific heats for the Euler equations.
pub const GAMMA: f64 = 1.4;
/// Default gravitational acceleration for the shallow water equations.
pub const GRAVITY: f64 = 9.8120;

/// Velocity coefficient of 1D linear advection `u_t + (a(x,t) u)_x = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AdvectionCoeff {
    /// Constant speed `a = c`.
    Constant(f64),
    /// Time-dependent speed `a = sin(ω t)`.
    SinT {
        /// Angular frequency `ω`.
        omega: f64,
    },
    /// Space-dependent speed `a = sin(x)`.
    SinX,
}

impl AdvectionCoeff {
    /// Speed at `(x, t)`.
    pub fn speed(&self, x: f64, t: f64) -> f64 {
        match *self {
            AdvectionCoeff::Constant(c) => c,
            AdvectionCoeff::SinT { omega } => (omega * t).sin(),
            AdvectionCoeff::SinX => x.sin(),
        }
    }
}

/// Velocity field of 2D linear advection `u_t + (α u)_x + (β u)_y = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Velocity2D {
    /// Constant velocity `(α, β)`.
    Constant([f64; 2]),
    /// Swirling deformation flow
    /// `α = −cos²(x/2) sin(y) g(t)`, `β = sin(x) cos²(y/2) g(t)`, `g(t) = 2π cos(π t / T)`.
    Swirl {
        /// Period `T`.
        period: f64,
    },
}

impl Velocity2D {
    /// Velocity at `(x, y, t)`.
    pub fn velocity(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        match *self {
            Velocity2D::Constant(v) => v,
            Velocity2D::Swirl { period } => {
                let g = 2.0 * std::f64::consts::PI * (std::f64::consts::PI * t / period).cos();
                let cx = (0.5 * x).cos();
                let cy = (0.5 * y).cos();
                [-cx * cx * y.sin() * g, x.sin() * cy * cy * g]
            }
        }
    }
}

/// Bottom topography `z_0(x)` of the 1D shallow water equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bottom {
    /// `z_0 ≡ 0`.
    Flat,
    /// `z_0 = sin²(π x)`.
    SinSquared,
}

impl Bottom {
    /// Height `z_0(x)`.
    pub fn height(&self, x: f64) -> f64 {
        match self {
            Bottom::Flat => 0.0,
            Bottom::SinSquared => (std::f64::consts::PI * x).sin().powi(2),
        }
    }

    /// Slope `z_0'(x)`.
    pub fn slope(&self, x: f64) -> f64 {
        match self {
            Bottom::Flat => 0.0,
            Bottom::SinSquared => std::f64::consts::PI * (2.0 * std::f64::consts::PI * x).sin(),
        }
    }
}

/// A hyperbolic conservation law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// 1D compressible Euler, state `(ρ, ρu, E)`.
    Euler1D {
        /// Ratio of specific heats.
        gamma: f64,
    },
    /// 2D compressible Euler, state `(ρ, ρu, ρv, E)`.
    Euler2D {
        /// Ratio of specific heats.
        gamma: f64,
    },
    /// 1D shallow water with bottom source, state `(h, hu)`.
    Swe1D {
        /// Gravitational acceleration.
        g: f64,
        /// Bottom topography.
        bottom: Bottom,
    },
    /// 2D shallow water over a flat bottom, state `(h, hu, hv)`.
    Swe2D {
        /// Gravitational acceleration.
        g: f64,
    },
    /// Inviscid Burgers `u_t + (u²/2)_x = 0`.
    Burgers1D,
    /// 2D Burgers `U_t + (U²/2)_x + (U²/2)_y = 0`.
    Burgers2D,
    /// 1D linear advection with variable coefficient.
    Advection1D(AdvectionCoeff),
    /// 2D linear advection with a prescribed velocity field.
    Advection2D(Velocity2D),
    /// Buckley–Leverett `f(u) = 4u² / (4u² + (1−u)²)`.
    BuckleyLeverett,
}

/// Eigen-decomposition `A = R diag(Λ) L` of a (normal) flux Jacobian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenStructure {
    /// Number of active components.
    pub m: usize,
    /// Eigenvalues.
    pub lambda: State,
    /// Right eigenvectors as columns.
    pub r: Mat,
    /// Left eigenvectors as rows (`L = R⁻¹`).
    pub l: Mat,
}

impl EigenStructure {
    /// Scalar structure with eigenvalue `lambda`.
    pub fn scalar(lambda: f64) -> Self {
        let mut r = [[0.0; 4]; 4];
        r[0][0] = 1.0;
        Self {
            m: 1,
            lambda: [lambda, 0.0, 0.0, 0.0],
            r,
            l: r,
        }
    }

    /// `R diag(d) L`.
    pub fn assemble(&self, d: &State) -> Mat {
        let m = self.m;
        let mut a = [[0.0; 4]; 4];
        for i in 0..m {
            for j in 0..m {
                let mut s = 0.0;
                for k in 0..m {
                    s += self.r[i][k] * d[k] * self.l[k][j];
                }
                a[i][j] = s;
            }
        }
        a
    }

    /// `R diag(d) L u` without forming the matrix.
    pub fn apply_diag(&self, d: &State, u: &State) -> State {
        let w = self.to_characteristic(u);
        let mut dw = [0.0; 4];
        for k in 0..self.m {
            dw[k] = d[k] * w[k];
        }
        self.from_characteristic(&dw)
    }

    /// Characteristic variables `L u`.
    pub fn to_characteristic(&self, u: &State) -> State {
        mat_vec(&self.l, u, self.m)
    }

    /// Physical variables `R w`.
    pub fn from_characteristic(&self, w: &State) -> State {
        mat_vec(&self.r, w, self.m)
    }

    /// `|A| = R |Λ| L`.
    pub fn abs_matrix(&self) -> Mat {
        let mut d = [0.0; 4];
        for k in 0..self.m {
            d[k] = self.lambda[k].abs();
        }
        self.assemble(&d)
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> f64 {
        self.lambda[..self.m].iter().fold(0.0, |a, l| a.max(l.abs()))
    }
}

/// `A u` restricted to the leading `m × m` block.
pub fn mat_vec(a: &Mat, u: &State, m: usize) -> State {
    let mut out = [0.0; 4];
    for i in 0..m {
        let mut s = 0.0;
        for j in 0..m {
            s += a[i][j] * u[j];
        }
        out[i] = s;
    }
    out
}

/// `A B` restricted to the leading `m × m` block.
pub fn mat_mul(a: &Mat, b: &Mat, m: usize) -> Mat {
    let mut c = [[0.0; 4]; 4];
    for i in 0..m {
        for j in 0..m {
            let mut s = 0.0;
            for k in 0..m {
                s += a[i][k] * b[k][j];
            }
            c[i][j] = s;
        }
    }
    c
}

/// Roe-averaged state of two Euler (or shallow water) states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoeState {
    /// Averaged density (or depth).
    pub rho: f64,
    /// Averaged x-velocity.
    pub u: f64,
    /// Averaged y-velocity (zero in 1D).
    pub v: f64,
    /// Averaged total enthalpy (zero for shallow water).
    pub h_tilde: f64,
    /// Averaged sound (or gravity-wave) speed.
    pub a: f64,
    /// Averaged pressure (`½ g h²` for shallow water).
    pub p: f64,
    /// Averaged total energy (zero for shallow water).
    pub e: f64,
}

impl Model {
    /// Short identifier.
    pub fn name(&self) -> &'static str {
        match self {
            Model::Euler1D { .. } => "euler1d",
            Model::Euler2D { .. } => "euler2d",
            Model::Swe1D { .. } => "swe1d",
            Model::Swe2D { .. } => "swe2d",
            Model::Burgers1D => "burgers1d",
            Model::Burgers2D => "burgers2d",
            Model::Advection1D(_) => "advection1d",
            Model::Advection2D(_) => "advection2d",
            Model::BuckleyLeverett => "buckley-leverett",
        }
    }

    /// Number of conserved components.
    pub fn n_comp(&self) -> usize {
        match self {
            Model::Euler1D { .. } => 3,
            Model::Euler2D { .. } => 4,
            Model::Swe1D { .. } => 2,
            Model::Swe2D { .. } => 3,
            _ => 1,
        }
    }

    /// Spatial dimension.
    pub fn dim(&self) -> usize {
        match self {
            Model::Euler2D { .. } | Model::Swe2D { .. } | Model::Burgers2D | Model::Advection2D(_) => 2,
            _ => 1,
        }
    }

    /// Whether the model is a scalar law.
    pub fn is_scalar(&self) -> bool {
        self.n_comp() == 1
    }

    /// Whether the model is an Euler system.
    pub fn is_euler(&self) -> bool {
        matches!(self, Model::Euler1D { .. } | Model::Euler2D { .. })
    }

    /// Whether the model is a shallow water system.
    pub fn is_swe(&self) -> bool {
        matches!(self, Model::Swe1D { .. } | Model::Swe2D { .. })
    }

    /// Indices of the x- and (optional) y-momentum components.
    pub fn momentum_components(&self) -> Option<(usize, Option<usize>)> {
        match self {
            Model::Euler1D { .. } | Model::Swe1D { .. } => Some((1, None)),
            Model::Euler2D { .. } | Model::Swe2D { .. } => Some((1, Some(2))),
            _ => None,
        }
    }

    /// Homogeneity factor `K` with `f(u) = K f'(u) u` for scalar laws
    /// (1 for linear advection, 1/2 for Burgers); `None` otherwise.
    pub fn scalar_homogeneity(&self) -> Option<f64> {
        match self {
            Model::Burgers1D | Model::Burgers2D => Some(0.5),
            Model::Advection1D(_) | Model::Advection2D(_) => Some(1.0),
            _ => None,
        }
    }

    fn gamma(&self) -> f64 {
        match *self {
            Model::Euler1D { gamma } | Model::Euler2D { gamma } => gamma,
            Model::Swe1D { .. } | Model::Swe2D { .. } => 2.0,
            _ => 0.0,
        }
    }

    fn gravity(&self) -> f64 {
        match *self {
            Model::Swe1D { g, .. } | Model::Swe2D { g } => g,
            _ => 0.0,
        }
    }

    /// Checks positivity of density/depth and pressure.
    pub fn check_admissible(&self, u: &State) -> Result<()> {
        let ok = match self {
            Model::Euler1D { .. } | Model::Euler2D { .. } => {
                u[0] > 0.0 && self.pressure(u) > 0.0 && u[..self.n_comp()].iter().all(|v| v.is_finite())
            }
            Model::Swe1D { .. } | Model::Swe2D { .. } => u[0] > 0.0 && u[..self.n_comp()].iter().all(|v| v.is_finite()),
            _ => u[0].is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Inadmissible {
                state: u[..self.n_comp()].to_vec(),
                context: String::new(),
            })
        }
    }

    /// Velocity `(u, v)` of a system state (zero `v` in 1D).
    pub fn velocity(&self, u: &State) -> [f64; 2] {
        match self.momentum_components() {
            Some((mx, my)) => [u[mx] / u[0], my.map_or(0.0, |j| u[j] / u[0])],
            None => [0.0, 0.0],
        }
    }

    /// Pressure (`½ g h²` for shallow water, zero for scalars).
    pub fn pressure(&self, u: &State) -> f64 {
        match *self {
            Model::Euler1D { gamma } => (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]),
            Model::Euler2D { gamma } => (gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]),
            Model::Swe1D { g, .. } | Model::Swe2D { g } => 0.5 * g * u[0] * u[0],
            _ => 0.0,
        }
    }

    /// Physical sound (or gravity-wave) speed.
    pub fn sound_speed(&self, u: &State) -> f64 {
        match self {
            Model::Euler1D { .. } | Model::Euler2D { .. } => (self.gamma() * self.pressure(u) / u[0]).sqrt(),
            Model::Swe1D { .. } | Model::Swe2D { .. } => (self.gravity() * u[0]).sqrt(),
            _ => 0.0,
        }
    }

    /// Conservative → primitive: Euler `(ρ, u[, v], P)`, SWE `(h, u[, v])`, scalars identity.
    pub fn to_primitive(&self, u: &State) -> State {
        match self {
            Model::Euler1D { .. } => [u[0], u[1] / u[0], self.pressure(u), 0.0],
            Model::Euler2D { .. } => [u[0], u[1] / u[0], u[2] / u[0], self.pressure(u)],
            Model::Swe1D { .. } => [u[0], u[1] / u[0], 0.0, 0.0],
            Model::Swe2D { .. } => [u[0], u[1] / u[0], u[2] / u[0], 0.0],
            _ => *u,
        }
    }

    /// Primitive → conservative (inverse of [`Model::to_primitive`]).
    pub fn from_primitive(&self, w: &State) -> State {
        match *self {
            Model::Euler1D { gamma } => {
                let (r, u, p) = (w[0], w[1], w[2]);
                [r, r * u, p / (gamma - 1.0) + 0.5 * r * u * u, 0.0]
            }
            Model::Euler2D { gamma } => {
                let (r, u, v, p) = (w[0], w[1], w[2], w[3]);
                [r, r * u, r * v, p / (gamma - 1.0) + 0.5 * r * (u * u + v * v)]
            }
            Model::Swe1D { .. } => [w[0], w[0] * w[1], 0.0, 0.0],
            Model::Swe2D { .. } => [w[0], w[0] * w[1], w[0] * w[2], 0.0],
            _ => *w,
        }
    }

    /// Normal flux `n_x F(U) + n_y G(U)` at position `pos` and time `t`.
    ///
    /// 1D models use only `n[0]` (`±1`).
    pub fn flux_n(&self, u: &State, n: [f64; 2], pos: [f64; 2], t: f64) -> State {
        match *self {
            Model::Euler1D { .. } => {
                let vel = u[1] / u[0];
                let p = self.pressure(u);
                scale([u[1], u[1] * vel + p, (u[2] + p) * vel, 0.0], n[0])
            }
            Model::Euler2D { .. } => {
                let [vx, vy] = self.velocity(u);
                let p = self.pressure(u);
                let qn = vx * n[0] + vy * n[1];
                [u[0] * qn, u[1] * qn + p * n[0], u[2] * qn + p * n[1], (u[3] + p) * qn]
            }
            Model::Swe1D { g, .. } => {
                let vel = u[1] / u[0];
                scale([u[1], u[1] * vel + 0.5 * g * u[0] * u[0], 0.0, 0.0], n[0])
            }
            Model::Swe2D { g } => {
                let [vx, vy] = self.velocity(u);
                let p = 0.5 * g * u[0] * u[0];
                let qn = vx * n[0] + vy * n[1];
                [u[0] * qn, u[1] * qn + p * n[0], u[2] * qn + p * n[1], 0.0]
            }
            Model::Burgers1D => [0.5 * u[0] * u[0] * n[0], 0.0, 0.0, 0.0],
            Model::Burgers2D => [0.5 * u[0] * u[0] * (n[0] + n[1]), 0.0, 0.0, 0.0],
            Model::Advection1D(c) => [c.speed(pos[0], t) * u[0] * n[0], 0.0, 0.0, 0.0],
            Model::Advection2D(v) => {
                let [a, b] = v.velocity(pos[0], pos[1], t);
                [(a * n[0] + b * n[1]) * u[0], 0.0, 0.0, 0.0]
            }
            Model::BuckleyLeverett => [bl_flux(u[0]) * n[0], 0.0, 0.0, 0.0],
        }
    }

    /// 1D physical flux `F(U)`.
    pub fn flux(&self, u: &State, x: f64, t: f64) -> State {
        self.flux_n(u, [1.0, 0.0], [x, 0.0], t)
    }

    /// 2D physical fluxes `(F(U), G(U))`.
    pub fn flux_2d(&self, u: &State, pos: [f64; 2], t: f64) -> (State, State) {
        (self.flux_n(u, [1.0, 0.0], pos, t), self.flux_n(u, [0.0, 1.0], pos, t))
    }

    /// Derivative `dF_n/du` of a scalar normal flux.
    pub fn scalar_derivative(&self, u: f64, n: [f64; 2], pos: [f64; 2], t: f64) -> f64 {
        match *self {
            Model::Burgers1D => u * n[0],
            Model::Burgers2D => u * (n[0] + n[1]),
            Model::Advection1D(c) => c.speed(pos[0], t) * n[0],
            Model::Advection2D(v) => {
                let [a, b] = v.velocity(pos[0], pos[1], t);
                a * n[0] + b * n[1]
            }
            Model::BuckleyLeverett => bl_derivative(u) * n[0],
            _ => 0.0,
        }
    }

    /// Largest physical wave speed magnitude in direction `n` (used for time steps).
    ///
    /// For time-periodic advection coefficients the bound is taken over all
    /// times (`|sin(ωt)| ≤ 1`, `|g(t)| ≤ 2π`) so that the step size does not
    /// blow up near zero crossings of the coefficient.
    pub fn max_speed_n(&self, u: &State, n: [f64; 2], pos: [f64; 2], t: f64) -> f64 {
        match *self {
            Model::Advection1D(AdvectionCoeff::SinT { .. }) => return n[0].abs(),
            Model::Advection2D(Velocity2D::Swirl { period }) => {
                let [a, b] = Velocity2D::Swirl { period }.velocity(pos[0], pos[1], 0.0);
                return (a * n[0] + b * n[1]).abs();
            }
            _ => {}
        }
        if self.is_scalar() {
            return self.scalar_derivative(u[0], n, pos, t).abs();
        }
        let [vx, vy] = self.velocity(u);
        (vx * n[0] + vy * n[1]).abs() + self.sound_speed(u)
    }

    /// Source term `S(U, x, t)` (shallow water bottom slope `−g h z_0'`).
    pub fn source(&self, u: &State, pos: [f64; 2], _t: f64) -> Option<State> {
        match *self {
            Model::Swe1D { g, bottom } if bottom != Bottom::Flat => {
                Some([0.0, -g * u[0] * bottom.slope(pos[0]), 0.0, 0.0])
            }
            _ => None,
        }
    }

    /// 1D eigenstructure used for flux splitting.
    ///
    /// Euler: `Λ = (u, u−a, u+a)`; shallow water: the modified structure with
    /// `a* = √(gh/2)` so that `F = A* U`; scalar laws: `λ = K f'(u)`.
    pub fn eigenstructure_1d(&self, u: &State) -> Result<EigenStructure> {
        match self {
            Model::Euler1D { .. } | Model::Swe1D { .. } => {
                self.check_admissible(u)?;
                Ok(self.eigen_normal_unchecked(u, [1.0, 0.0], [0.0, 0.0], 0.0))
            }
            m if m.dim() == 1 && m.scalar_homogeneity().is_some() => {
                Ok(self.eigen_normal_unchecked(u, [1.0, 0.0], [0.0, 0.0], 0.0))
            }
            _ => Err(Error::Unsupported {
                op: "eigenstructure_1d",
                model: self.name(),
            }),
        }
    }

    /// Normal-direction eigenstructure `A_n = n_x ∂F/∂U + n_y ∂G/∂U` used for splitting.
    ///
    /// 1D models use `n[0] = ±1`. Euler 2D eigenvalues are ordered
    /// `(q_n, q_n, q_n − a, q_n + a)`; shallow water uses the modified speed.
    pub fn eigen_normal(&self, u: &State, n: [f64; 2], pos: [f64; 2], t: f64) -> Result<EigenStructure> {
        if self.is_scalar() && self.scalar_homogeneity().is_none() {
            return Err(Error::Unsupported {
                op: "eigen_normal",
                model: self.name(),
            });
        }
        self.check_admissible(u)?;
        Ok(self.eigen_normal_unchecked(u, n, pos, t))
    }

    /// Alias of [`Model::eigen_normal`] for 2D models.
    pub fn normal_eigenstructure_2d(&self, u: &State, n: [f64; 2]) -> Result<EigenStructure> {
        if self.dim() != 2 {
            return Err(Error::Unsupported {
                op: "normal_eigenstructure_2d",
                model: self.name(),
            });
        }
        self.eigen_normal(u, n, [0.0, 0.0], 0.0)
    }

    fn eigen_normal_unchecked(&self, u: &State, n: [f64; 2], pos: [f64; 2], t: f64) -> EigenStructure {
        match *self {
            Model::Euler1D { gamma } => {
                let vel = u[1] / u[0];
                let a = self.sound_speed(u);
                let h = (u[2] + self.pressure(u)) / u[0];
                let mut e = euler1d_eigen(gamma, vel, a, h);
                if n[0] < 0.0 {
                    flip_sign(&mut e);
                }
                e
            }
            Model::Euler2D { gamma } => {
                let [vx, vy] = self.velocity(u);
                let a = self.sound_speed(u);
                let h = (u[3] + self.pressure(u)) / u[0];
                euler2d_eigen(gamma, vx, vy, a, h, n)
            }
            Model::Swe1D { g, .. } => {
                let vel = u[1] / u[0];
                let a = (0.5 * g * u[0]).sqrt();
                let mut e = swe1d_eigen(vel, a);
                if n[0] < 0.0 {
                    flip_sign(&mut e);
                }
                e
            }
            Model::Swe2D { g } => {
                let [vx, vy] = self.velocity(u);
                let a = (0.5 * g * u[0]).sqrt();
                swe2d_eigen(vx, vy, a, n)
            }
            _ => {
                let k = self.scalar_homogeneity().unwrap_or(1.0);
                EigenStructure::scalar(k * self.scalar_derivative(u[0], n, pos, t))
            }
        }
    }

    /// Roe average of two states (1D along x; 2D with both velocity components).
    ///
    /// `√ρ̄ = (√ρ_L + √ρ_R)/2`, `ū`, `v̄`, `H̃` are `√ρ`-weighted, and
    /// `P̄ = (γ−1)/γ (ρ̄ H̃ − ½ ρ̄ (ū² + v̄²))`, `ā² = (γ−1)(H̃ − ½(ū² + v̄²))`,
    /// `Ē = ρ̄ H̃ − P̄`. Shallow water uses the arithmetic mean depth.
    pub fn roe_average(&self, ul: &State, ur: &State) -> Result<RoeState> {
        self.check_admissible(ul)?;
        self.check_admissible(ur)?;
        let (sl, sr) = (ul[0].sqrt(), ur[0].sqrt());
        let wsum = sl + sr;
        let [ulx, uly] = self.velocity(ul);
        let [urx, ury] = self.velocity(ur);
        let u = (sl * ulx + sr * urx) / wsum;
        let v = (sl * uly + sr * ury) / wsum;
        match self {
            Model::Euler1D { .. } | Model::Euler2D { .. } => {
                let gamma = self.gamma();
                let e_idx = self.n_comp() - 1;
                let hl = (ul[e_idx] + self.pressure(ul)) / ul[0];
                let hr = (ur[e_idx] + self.pressure(ur)) / ur[0];
                let h_tilde = (sl * hl + sr * hr) / wsum;
                let rho = 0.25 * wsum * wsum;
                let kin = 0.5 * (u * u + v * v);
                let a2 = (gamma - 1.0) * (h_tilde - kin);
                if !(a2 > 0.0) {
                    return Err(Error::InadmissibleAverage(a2));
                }
                let p = (gamma - 1.0) / gamma * (rho * h_tilde - rho * kin);
                Ok(RoeState {
                    rho,
                    u,
                    v,
                    h_tilde,
                    a: a2.sqrt(),
                    p,
                    e: rho * h_tilde - p,
                })
            }
            Model::Swe1D { g, .. } | Model::Swe2D { g } => {
                let h = 0.5 * (ul[0] + ur[0]);
                Ok(RoeState {
                    rho: h,
                    u,
                    v,
                    h_tilde: 0.0,
                    a: (g * h).sqrt(),
                    p: 0.5 * g * h * h,
                    e: 0.0,
                })
            }
            _ => Err(Error::Unsupported {
                op: "roe_average",
                model: self.name(),
            }),
        }
    }

    /// Conservative state of a Roe average.
    pub fn roe_to_conservative(&self, r: &RoeState) -> State {
        match self {
            Model::Euler1D { .. } => [r.rho, r.rho * r.u, r.e, 0.0],
            Model::Euler2D { .. } => [r.rho, r.rho * r.u, r.rho * r.v, r.e],
            Model::Swe1D { .. } => [r.rho, r.rho * r.u, 0.0, 0.0],
            Model::Swe2D { .. } => [r.rho, r.rho * r.u, r.rho * r.v, 0.0],
            _ => [r.rho, 0.0, 0.0, 0.0],
        }
    }

    /// Roe average with the normal-direction eigenstructure and `|A_n|`.
    pub fn roe_average_normal(
        &self,
        u_int: &State,
        u_ext: &State,
        n: [f64; 2],
    ) -> Result<(RoeState, EigenStructure, Mat)> {
        let r = self.roe_average(u_int, u_ext)?;
        let e = match *self {
            Model::Euler1D { gamma } => {
                let mut e = euler1d_eigen(gamma, r.u, r.a, r.h_tilde);
                if n[0] < 0.0 {
                    flip_sign(&mut e);
                }
                e
            }
            Model::Euler2D { gamma } => euler2d_eigen(gamma, r.u, r.v, r.a, r.h_tilde, n),
            _ => self.eigen_normal(&self.roe_to_conservative(&r), n, [0.0, 0.0], 0.0)?,
        };
        let abs = e.abs_matrix();
        Ok((r, e, abs))
    }
}

fn scale(v: State, s: f64) -> State {
    [v[0] * s, v[1] * s, v[2] * s, v[3] * s]
}

/// Structure of `−A` from that of `A` (eigenvalues negated, vectors kept).
fn flip_sign(e: &mut EigenStructure) {
    for k in 0..e.m {
        e.lambda[k] = -e.lambda[k];
    }
}

/// Buckley–Leverett flux.
pub fn bl_flux(u: f64) -> f64 {
    let num = 4.0 * u * u;
    num / (num + (1.0 - u) * (1.0 - u))
}

/// Derivative of the Buckley–Leverett flux.
pub fn bl_derivative(u: f64) -> f64 {
    let d = 4.0 * u * u + (1.0 - u) * (1.0 - u);
    8.0 * u * (1.0 - u) / (d * d)
}

fn euler1d_eigen(gamma: f64, u: f64, a: f64, h: f64) -> EigenStructure {
    let b1 = (gamma - 1.0) / (a * a);
    let b2 = 0.5 * b1 * u * u;
    let mut r = [[0.0; 4]; 4];
    let cols = [[1.0, u, 0.5 * u * u], [1.0, u - a, h - u * a], [1.0, u + a, h + u * a]];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..3 {
            r[i][k] = col[i];
        }
    }
    let mut l = [[0.0; 4]; 4];
    l[0][..3].copy_from_slice(&[1.0 - b2, b1 * u, -b1]);
    l[1][..3].copy_from_slice(&[0.5 * (b2 + u / a), -0.5 * (b1 * u + 1.0 / a), 0.5 * b1]);
    l[2][..3].copy_from_slice(&[0.5 * (b2 - u / a), -0.5 * (b1 * u - 1.0 / a), 0.5 * b1]);
    EigenStructure {
        m: 3,
        lambda: [u, u - a, u + a, 0.0],
        r,
        l,
    }
}

fn euler2d_eigen(gamma: f64, u: f64, v: f64, a: f64, h: f64, n: [f64; 2]) -> EigenStructure {
    let [nx, ny] = n;
    let (tx, ty) = (-ny, nx);
    let qn = u * nx + v * ny;
    let qt = u * tx + v * ty;
    let b1 = (gamma - 1.0) / (a * a);
    let b2 = 0.5 * b1 * (u * u + v * v);
    let cols = [
        [1.0, u, v, 0.5 * (u * u + v * v)],
        [0.0, tx, ty, qt],
        [1.0, u - a * nx, v - a * ny, h - a * qn],
        [1.0, u + a * nx, v + a * ny, h + a * qn],
    ];
    let mut r = [[0.0; 4]; 4];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..4 {
            r[i][k] = col[i];
        }
    }
    let l = [
        [1.0 - b2, b1 * u, b1 * v, -b1],
        [-qt, tx, ty, 0.0],
        [
            0.5 * (b2 + qn / a),
            -0.5 * (b1 * u + nx / a),
            -0.5 * (b1 * v + ny / a),
            0.5 * b1,
        ],
        [
            0.5 * (b2 - qn / a),
            -0.5 * (b1 * u - nx / a),
            -0.5 * (b1 * v - ny / a),
            0.5 * b1,
        ],
    ];
    EigenStructure {
        m: 4,
        lambda: [qn, qn, qn - a, qn + a],
        r,
        l,
    }
}

fn swe1d_eigen(u: f64, a: f64) -> EigenStructure {
    let mut r = [[0.0; 4]; 4];
    r[0][0] = 1.0;
    r[0][1] = 1.0;
    r[1][0] = u - a;
    r[1][1] = u + a;
    let mut l = [[0.0; 4]; 4];
    let s = 0.5 / a;
    l[0][0] = s * (u + a);
    l[0][1] = -s;
    l[1][0] = -s * (u - a);
    l[1][1] = s;
    EigenStructure {
        m: 2,
        lambda: [u - a, u + a, 0.0, 0.0],
        r,
        l,
    }
}

fn swe2d_eigen(u: f64, v: f64, a: f64, n: [f64; 2]) -> EigenStructure {
    let [nx, ny] = n;
    let (tx, ty) = (-ny, nx);
    let qn = u * nx + v * ny;
    let qt = u * tx + v * ty;
    let cols = [
        [1.0, u - a * nx, v - a * ny],
        [0.0, tx, ty],
        [1.0, u + a * nx, v + a * ny],
    ];
    let mut r = [[0.0; 4]; 4];
    for (k, col) in cols.iter().enumerate() {
        for i in 0..3 {
            r[i][k] = col[i];
        }
    }
    let s = 0.5 / a;
    let mut l = [[0.0; 4]; 4];
    l[0][..3].copy_from_slice(&[s * (a + qn), -s * nx, -s * ny]);
    l[1][..3].copy_from_slice(&[-qt, tx, ty]);
    l[2][..3].copy_from_slice(&[s * (a - qn), s * nx, s * ny]);
    EigenStructure {
        m: 3,
        lambda: [qn - a, qn, qn + a, 0.0],
        r,
        l,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER1: Model = Model::Euler1D { gamma: GAMMA };
    const EULER2: Model = Model::Euler2D { gamma: GAMMA };

    #[test]
    fn euler_flux_at_rest() {
        let f = EULER1.flux(&[1.0, 0.0, 2.5, 0.0], 0.0, 0.0);
        assert!(f[0].abs() < 1e-15 && (f[1] - 1.0).abs() < 1e-15 && f[2].abs() < 1e-15);
    }

    #[test]
    fn burgers_and_swe_flux() {
        assert_eq!(Model::Burgers1D.flux(&[3.0, 0.0, 0.0, 0.0], 0.0, 0.0)[0], 4.5);
        let swe = Model::Swe1D {
            g: GRAVITY,
            bottom: Bottom::Flat,
        };
        let f = swe.flux(&[1.0, 0.0, 0.0, 0.0], 0.0, 0.0);
        assert_eq!(f[0], 0.0);
        assert!((f[1] - 4.9060).abs() < 1e-14);
    }

    #[test]
    fn euler_eigenvalues_at_rest() {
        let e = EULER1.eigenstructure_1d(&[1.0, 0.0, 2.5, 0.0]).unwrap();
        let a = 1.4f64.sqrt();
        assert!(e.lambda[0].abs() < 1e-15);
        assert!((e.lambda[1] + a).abs() < 1e-14 && (e.lambda[2] - a).abs() < 1e-14);
    }

    #[test]
    fn swe_modified_eigenvalues() {
        let swe = Model::Swe1D {
            g: GRAVITY,
            bottom: Bottom::Flat,
        };
        let e = swe.eigenstructure_1d(&[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((e.lambda[0] + GRAVITY.sqrt()).abs() < 1e-14);
        assert!((e.lambda[1] - GRAVITY.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn euler2d_eigenvalues_at_rest() {
        let u = EULER2.from_primitive(&[1.0, 0.0, 0.0, 1.0]);
        let e = EULER2.normal_eigenstructure_2d(&u, [1.0, 0.0]).unwrap();
        let a = 1.4f64.sqrt();
        assert_eq!(&e.lambda[..2], &[0.0, 0.0]);
        assert!((e.lambda[2] + a).abs() < 1e-14 && (e.lambda[3] - a).abs() < 1e-14);
    }

    #[test]
    fn y_normal_structure_is_x_structure_with_velocities_swapped() {
        let w = [1.3, 0.4, -0.7, 2.1];
        let u = EULER2.from_primitive(&w);
        let swapped = EULER2.from_primitive(&[1.3, -0.7, 0.4, 2.1]);
        let ey = EULER2.normal_eigenstructure_2d(&u, [0.0, 1.0]).unwrap();
        let ex = EULER2.normal_eigenstructure_2d(&swapped, [1.0, 0.0]).unwrap();
        for k in 0..4 {
            assert!((ey.lambda[k] - ex.lambda[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn roe_average_examples() {
        let ul = EULER1.from_primitive(&[1.0, 0.0, 1.0, 0.0]);
        let ur = EULER1.from_primitive(&[4.0, 3.0, 2.0, 0.0]);
        let r = EULER1.roe_average(&ul, &ur).unwrap();
        assert!((r.rho - 2.25).abs() < 1e-14);
        assert!((r.u - 2.0).abs() < 1e-14);
    }

    #[test]
    fn roe_average_of_equal_states_is_the_state() {
        let u = EULER2.from_primitive(&[1.7, 0.3, -0.2, 0.9]);
        let r = EULER2.roe_average(&u, &u).unwrap();
        assert!((r.rho - 1.7).abs() < 1e-14);
        assert!((r.u - 0.3).abs() < 1e-14 && (r.v + 0.2).abs() < 1e-14);
        assert!((r.p - 0.9).abs() < 1e-13);
        assert!((r.e - u[3]).abs() < 1e-13);
        assert!((r.a - EULER2.sound_speed(&u)).abs() < 1e-13);
    }

    #[test]
    fn primitive_round_trip() {
        let w = [0.8, -1.2, 0.4, 2.2];
        let back = EULER2.to_primitive(&EULER2.from_primitive(&w));
        for k in 0..4 {
            assert!((back[k] - w[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn swirl_vanishes_at_half_period() {
        let v = Velocity2D::Swirl { period: 0.75 };
        let [a, b] = v.velocity(0.3, -1.1, 0.375);
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);
    }

    #[test]
    fn scalar_wall_has_no_momentum() {
        assert!(Model::Burgers1D.momentum_components().is_none());
    }
}
