//! Explicit Runge–Kutta integrators with limiting before every stage.
//!
//! Every scheme is stored in Shu–Osher form
//! `u⁽ᵏ⁾ = Σ_{j<k} a_kj u⁽ʲ⁾ + Δt Σ_{j<k} b_kj L_h(u⁽ʲ⁾; t_n + c_j Δt)`,
//! so each operator evaluation `L_h(u⁽ʲ⁾)` is computed once (after limiting
//! `u⁽ʲ⁾`) and reused by later stages.

use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::dg::{LimitStats, SpatialOperator};
use crate::error::{Error, Result};
use crate::field::Field;

/// Explicit time integrator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrator {
    /// Three-stage third-order TVD Runge–Kutta.
    TvdRk3,
    /// Classical four-stage fourth-order Runge–Kutta (non-SSP).
    Rk4,
    /// Ten-stage fourth-order strong-stability-preserving Runge–Kutta.
    Ssprk104,
}

/// Shu–Osher coefficient table of an explicit scheme with `s` stages.
#[derive(Clone, Debug, PartialEq)]
pub struct Tableau {
    /// `a[k−1][j]`: weight of state `u⁽ʲ⁾` in stage `k = 1..=s`.
    pub a: Vec<Vec<f64>>,
    /// `b[k−1][j]`: weight of `Δt L_h(u⁽ʲ⁾)` in stage `k`.
    pub b: Vec<Vec<f64>>,
    /// `c[j]`: time offset (fraction of `Δt`) at which `L_h(u⁽ʲ⁾)` is evaluated.
    pub c: Vec<f64>,
}

impl Integrator {
    /// Name used in configuration files.
    pub fn name(self) -> &'static str {
        match self {
            Integrator::TvdRk3 => "tvdrk3",
            Integrator::Rk4 => "rk4",
            Integrator::Ssprk104 => "ssprk104",
        }
    }

    /// Formal order of accuracy.
    pub fn order(self) -> usize {
        match self {
            Integrator::TvdRk3 => 3,
            Integrator::Rk4 | Integrator::Ssprk104 => 4,
        }
    }

    /// Shu–Osher coefficients including stage times.
    pub fn tableau(self) -> Tableau {
        match self {
            Integrator::TvdRk3 => Tableau {
                a: vec![vec![1.0], vec![0.75, 0.25], vec![1.0 / 3.0, 0.0, 2.0 / 3.0]],
                b: vec![vec![1.0], vec![0.0, 0.25], vec![0.0, 0.0, 2.0 / 3.0]],
                c: vec![0.0, 1.0, 0.5],
            },
            Integrator::Rk4 => Tableau {
                a: vec![
                    vec![1.0],
                    vec![1.0, 0.0],
                    vec![1.0, 0.0, 0.0],
                    vec![-1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0],
                ],
                b: vec![
                    vec![0.5],
                    vec![0.0, 0.5],
                    vec![0.0, 0.0, 1.0],
                    vec![0.0, 0.0, 0.0, 1.0 / 6.0],
                ],
                c: vec![0.0, 0.5, 0.5, 1.0],
            },
            Integrator::Ssprk104 => {
                let s = 10;
                let mut a = vec![vec![0.0; 0]; s];
                let mut b = vec![vec![0.0; 0]; s];
                for k in 1..=s {
                    a[k - 1] = vec![0.0; k];
                    b[k - 1] = vec![0.0; k];
                    match k {
                        5 => {
                            a[4][0] = 0.6;
                            a[4][4] = 0.4;
                            b[4][4] = 1.0 / 15.0;
                        }
                        10 => {
                            a[9][0] = 1.0 / 25.0;
                            a[9][4] = 9.0 / 25.0;
                            a[9][9] = 0.6;
                            b[9][4] = 3.0 / 50.0;
                            b[9][9] = 0.1;
                        }
                        _ => {
                            a[k - 1][k - 1] = 1.0;
                            b[k - 1][k - 1] = 1.0 / 6.0;
                        }
                    }
                }
                let c = vec![
                    0.0,
                    1.0 / 6.0,
                    1.0 / 3.0,
                    0.5,
                    2.0 / 3.0,
                    1.0 / 3.0,
                    0.5,
                    2.0 / 3.0,
                    5.0 / 6.0,
                    1.0,
                ];
                Tableau { a, b, c }
            }
        }
    }

    /// Advances `u` by one step of size `dt` from time `t`.
    ///
    /// `residual(u, t, out)` evaluates `L_h`; `limit(u, t)` is applied to every
    /// stage input before its residual is evaluated (it may be the identity).
    /// Returns the new state and the statistics of the first (step-start) limiting.
    pub fn step<R, L>(self, u: &Field, dt: f64, t: f64, mut residual: R, mut limit: L) -> Result<(Field, LimitStats)>
    where
        R: FnMut(&Field, f64, &mut Field) -> Result<()>,
        L: FnMut(&mut Field, f64) -> Result<LimitStats>,
    {
        let tab = self.tableau();
        let s = tab.a.len();
        let mut states: Vec<Field> = Vec::with_capacity(s + 1);
        let mut rates: Vec<Field> = Vec::with_capacity(s);
        let mut first = u.clone();
        first.time = t;
        states.push(first);
        let mut start_stats = LimitStats::default();
        for k in 1..=s {
            // Limit and evaluate the most recent state (index k − 1).
            let j = k - 1;
            let tj = t + tab.c[j] * dt;
            let stats = limit(&mut states[j], tj)?;
            if j == 0 {
                start_stats = stats;
            }
            let mut r = Field::zeros(u.n_cells, u.n_comp, u.n_modes);
            residual(&states[j], tj, &mut r)?;
            if !r.is_finite() {
                return Err(Error::Divergence { time: t, stage: k });
            }
            rates.push(r);
            let mut next = Field::zeros(u.n_cells, u.n_comp, u.n_modes);
            for (i, &a) in tab.a[k - 1].iter().enumerate() {
                if a != 0.0 {
                    next.data.iter_mut().zip(&states[i].data).for_each(|(n, v)| *n += a * v);
                }
            }
            for (i, &b) in tab.b[k - 1].iter().enumerate() {
                if b != 0.0 {
                    let w = b * dt;
                    next.data.iter_mut().zip(&rates[i].data).for_each(|(n, v)| *n += w * v);
                }
            }
            if !next.is_finite() {
                return Err(Error::Divergence { time: t, stage: k });
            }
            next.time = t + dt;
            states.push(next);
        }
        Ok((states.pop().expect("at least one stage"), start_stats))
    }

    /// One step using a spatial operator for both residual and limiter.
    pub fn step_operator<O: SpatialOperator + ?Sized>(
        self,
        op: &O,
        u: &Field,
        dt: f64,
        t: f64,
    ) -> Result<(Field, LimitStats)> {
        self.step(u, dt, t, |f, tt, out| op.residual(f, tt, out), |f, tt| op.limit(f, tt))
    }
}

impl FromStr for Integrator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_', '(', ')', ','], "").as_str() {
            "tvdrk3" | "rk3" | "ssprk3" => Ok(Integrator::TvdRk3),
            "rk4" => Ok(Integrator::Rk4),
            "ssprk104" => Ok(Integrator::Ssprk104),
            _ => Err(Error::Config(format!("unknown integrator `{s}`"))),
        }
    }
}

/// Time-stepping parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeConfig {
    /// Integrator.
    pub integrator: Integrator,
    /// CFL number.
    pub cfl: f64,
    /// Final time.
    pub t_end: f64,
    /// Optional fixed step (overrides the CFL step; the last step is still clamped).
    pub fixed_dt: Option<f64>,
    /// Safety cap on the number of steps.
    pub max_steps: usize,
}

impl TimeConfig {
    /// Configuration with the given integrator, CFL number and final time.
    pub fn new(integrator: Integrator, cfl: f64, t_end: f64) -> Self {
        Self {
            integrator,
            cfl,
            t_end,
            fixed_dt: None,
            max_steps: 50_000_000,
        }
    }
}

/// Summary of an integration run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    /// Number of time steps taken.
    pub steps: usize,
    /// Troubled-cell count at the start of every step.
    pub troubled_per_step: Vec<usize>,
    /// Statistics of the final limiting applied to the returned state.
    pub final_limit: LimitStats,
    /// Total number of interface freezes that fell back to mean averages.
    pub freeze_fallbacks: usize,
    /// Wall-clock time.
    pub wall_time: Duration,
    /// Final time reached.
    pub t_final: f64,
}

/// Result of an integration that may have stopped early.
#[derive(Clone, Debug)]
pub struct Integration {
    /// Last successfully computed state (the final state on success).
    pub field: Field,
    /// Run statistics up to the point of failure.
    pub report: RunReport,
    /// Failure that stopped the run, if any.
    pub error: Option<Error>,
}

/// Integrates from `u.time` to `cfg.t_end` with CFL-limited steps, clamping the last step.
///
/// The limiter is applied before each stage and once more to the final state.
pub fn integrate<O: SpatialOperator + ?Sized>(op: &O, u: Field, cfg: &TimeConfig) -> Result<(Field, RunReport)> {
    let out = integrate_partial(op, u, cfg);
    match out.error {
        Some(e) => Err(e),
        None => Ok((out.field, out.report)),
    }
}

/// Like [`integrate`], but keeps the last good state when a step fails.
pub fn integrate_partial<O: SpatialOperator + ?Sized>(op: &O, mut u: Field, cfg: &TimeConfig) -> Integration {
    let clock = Instant::now();
    let mut report = RunReport::default();
    let t0 = u.time;
    let mut t = t0;
    let error = (|| -> Result<()> {
        if cfg.cfl.is_nan() || cfg.cfl <= 0.0 {
            return Err(Error::Config("CFL number must be positive".into()));
        }
        if cfg.t_end < t0 {
            return Err(Error::Config(format!(
                "end time {} precedes start time {t0}",
                cfg.t_end
            )));
        }
        while t < cfg.t_end {
            if report.steps >= cfg.max_steps {
                return Err(Error::Config(format!(
                    "step limit {} reached at t = {t}",
                    cfg.max_steps
                )));
            }
            let mut dt = match cfg.fixed_dt {
                Some(dt) => dt,
                None => op.stable_dt(&u, cfg.cfl, t),
            };
            if dt.is_nan() || dt <= 0.0 || !dt.is_finite() {
                return Err(Error::Divergence { time: t, stage: 0 });
            }
            let last = t + dt >= cfg.t_end - 1e-14 * cfg.t_end.abs().max(1.0);
            if last {
                dt = cfg.t_end - t;
            }
            let (next, stats) = cfg.integrator.step_operator(op, &u, dt, t).map_err(|e| match e {
                Error::Inadmissible { state, context } => Error::Inadmissible {
                    state,
                    context: format!("{context} during the step from t = {t}"),
                },
                other => other,
            })?;
            report.troubled_per_step.push(stats.troubled_cells);
            report.freeze_fallbacks += stats.freeze_fallbacks;
            u = next;
            report.steps += 1;
            t = if last { cfg.t_end } else { t + dt };
            u.time = t;
        }
        report.final_limit = op.limit(&mut u, t)?;
        report.freeze_fallbacks += report.final_limit.freeze_fallbacks;
        Ok(())
    })()
    .err();
    report.t_final = t;
    report.wall_time = clock.elapsed();
    Integration {
        field: u,
        report,
        error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(v: f64) -> Field {
        let mut f = Field::zeros(1, 1, 1);
        f.data[0] = v;
        f
    }

    fn linear_step(int: Integrator, lambda: f64, dt: f64) -> f64 {
        let (u, _) = int
            .step(
                &scalar(1.0),
                dt,
                0.0,
                |f, _, out| {
                    out.data[0] = lambda * f.data[0];
                    Ok(())
                },
                |_, _| Ok(LimitStats::default()),
            )
            .unwrap();
        u.data[0]
    }

    #[test]
    fn consistency_of_tables() {
        for int in [Integrator::TvdRk3, Integrator::Rk4, Integrator::Ssprk104] {
            let tab = int.tableau();
            for row in &tab.a {
                let s: f64 = row.iter().sum();
                assert!((s - 1.0).abs() < 1e-15, "{int:?}");
            }
        }
    }

    #[test]
    fn zero_operator_is_identity() {
        for int in [Integrator::TvdRk3, Integrator::Rk4, Integrator::Ssprk104] {
            assert_eq!(linear_step(int, 0.0, 0.3), 1.0);
        }
    }

    #[test]
    fn ssprk104_reproduces_exponential() {
        let u = linear_step(Integrator::Ssprk104, 1.0, 0.1);
        assert!((u - 0.1f64.exp()).abs() < 1e-7);
    }

    #[test]
    fn parse_names() {
        assert_eq!("TVD-RK3".parse::<Integrator>().unwrap(), Integrator::TvdRk3);
        assert_eq!("SSPRK(10,4)".parse::<Integrator>().unwrap(), Integrator::Ssprk104);
        assert!("euler".parse::<Integrator>().is_err());
    }
}
