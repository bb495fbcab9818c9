//! Shared property checks: flux splitting identities, eigenvector consistency,
//! characteristic transforms, limiter constraints and optimality,
//! conservation, free-stream preservation and Runge–Kutta amplification.

#![allow(clippy::needless_range_loop)]

use fvsdg::basis::Basis2D;
use fvsdg::characteristic::{interp_transform, moment_transform, InterpSampler};
use fvsdg::flux::{numerical_flux, scalar_llf_flux, scalar_sw_flux, split};
use fvsdg::limiter::{reconstruct_1d, reconstruct_2d, tvb_corrections_1d, tvb_corrections_2d, Tables1D, Tables2D};
use fvsdg::models::{AdvectionCoeff, Bottom, Velocity2D, GAMMA, GRAVITY};
use fvsdg::{
    Boundaries, BoundaryKind, Dg1D, Dg2D, Field, FluxContext, FluxScheme, Indicator, Integrator, LimitStats,
    LimiterConfig, Mesh1D, Mesh2D, Model, SpatialOperator, State,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(20_240_917)
}

fn random_state(model: &Model, r: &mut ChaCha8Rng) -> State {
    let w = match model {
        Model::Euler1D { .. } => [
            r.gen_range(0.1..5.0),
            r.gen_range(-4.0..4.0),
            r.gen_range(0.05..10.0),
            0.0,
        ],
        Model::Euler2D { .. } => [
            r.gen_range(0.1..5.0),
            r.gen_range(-4.0..4.0),
            r.gen_range(-4.0..4.0),
            r.gen_range(0.05..10.0),
        ],
        Model::Swe1D { .. } => [r.gen_range(0.05..5.0), r.gen_range(-6.0..6.0), 0.0, 0.0],
        Model::Swe2D { .. } => [
            r.gen_range(0.05..5.0),
            r.gen_range(-6.0..6.0),
            r.gen_range(-6.0..6.0),
            0.0,
        ],
        _ => [r.gen_range(-2.0..2.0), 0.0, 0.0, 0.0],
    };
    if model.is_scalar() {
        w
    } else {
        model.from_primitive(&w)
    }
}

fn random_normal(model: &Model, r: &mut ChaCha8Rng) -> [f64; 2] {
    if model.dim() == 1 {
        return [1.0, 0.0];
    }
    let th: f64 = r.gen_range(0.0..std::f64::consts::TAU);
    [th.cos(), th.sin()]
}

fn system_models() -> Vec<Model> {
    vec![
        Model::Euler1D { gamma: GAMMA },
        Model::Euler2D { gamma: GAMMA },
        Model::Swe1D {
            g: GRAVITY,
            bottom: Bottom::Flat,
        },
        Model::Swe2D { g: GRAVITY },
    ]
}

fn system_schemes() -> Vec<FluxScheme> {
    vec![
        FluxScheme::StegerWarming { delta: 0.0 },
        FluxScheme::StegerWarming { delta: 1e-3 },
        FluxScheme::LaxFriedrichsLocal,
        FluxScheme::LaxFriedrichsGlobal { m: Some(50.0) },
        FluxScheme::VanLeer,
        FluxScheme::Ausm,
    ]
}

fn close(a: &State, b: &State, m: usize, tol: f64) -> bool {
    (0..m).all(|k| (a[k] - b[k]).abs() <= tol * (1.0 + a[k].abs().max(b[k].abs())))
}

pub fn flux_split_reproduces_the_physical_flux() {
    let mut r = rng();
    for model in system_models() {
        for scheme in system_schemes() {
            if scheme.check_compatible(&model).is_err() {
                continue;
            }
            for _ in 0..200 {
                let u = random_state(&model, &mut r);
                let n = random_normal(&model, &mut r);
                let s = split(&model, &scheme, &u, n, [0.0, 0.0], 0.0, &FluxContext::default()).unwrap();
                let mut sum = [0.0; 4];
                for k in 0..4 {
                    sum[k] = s.plus[k] + s.minus[k];
                }
                let f = model.flux_n(&u, n, [0.0, 0.0], 0.0);
                assert!(close(&sum, &f, model.n_comp(), 1e-12), "{model:?} {scheme:?} {u:?}");
            }
        }
    }
}

pub fn numerical_fluxes_are_consistent() {
    let mut r = rng();
    for model in system_models() {
        for scheme in system_schemes() {
            if scheme.check_compatible(&model).is_err() {
                continue;
            }
            for _ in 0..200 {
                let u = random_state(&model, &mut r);
                let n = random_normal(&model, &mut r);
                let f = numerical_flux(&model, &scheme, &u, &u, n, [0.0, 0.0], 0.0, &FluxContext::default()).unwrap();
                assert!(close(&f, &model.flux_n(&u, n, [0.0, 0.0], 0.0), model.n_comp(), 1e-12));
            }
        }
    }
    let scalars = [
        Model::Burgers1D,
        Model::Burgers2D,
        Model::Advection1D(AdvectionCoeff::SinX),
        Model::Advection1D(AdvectionCoeff::SinT { omega: 1.0 }),
        Model::Advection2D(Velocity2D::Swirl { period: 0.75 }),
        Model::BuckleyLeverett,
    ];
    for model in scalars {
        for _ in 0..200 {
            let u = r.gen_range(-1.5..1.5);
            let n = random_normal(&model, &mut r);
            let pos = [r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0)];
            let t = r.gen_range(0.0..2.0);
            let f = model.flux_n(&[u, 0.0, 0.0, 0.0], n, pos, t)[0];
            assert!((scalar_llf_flux(&model, u, u, n, pos, t, None) - f).abs() <= 1e-12 * (1.0 + f.abs()));
            if model.scalar_homogeneity().is_some() {
                let sw = scalar_sw_flux(&model, u, u, n, pos, t).unwrap();
                assert!((sw - f).abs() <= 1e-12 * (1.0 + f.abs()), "{model:?}");
            }
        }
    }
}

pub fn scalar_steger_warming_flux_is_monotone_on_a_grid() {
    let models = [
        (Model::Burgers1D, [1.0, 0.0]),
        (Model::Burgers2D, [1.0, 0.0]),
        (Model::Burgers2D, [0.0, 1.0]),
        (Model::Advection1D(AdvectionCoeff::Constant(-0.7)), [1.0, 0.0]),
        (Model::Advection1D(AdvectionCoeff::SinX), [1.0, 0.0]),
    ];
    let grid: Vec<f64> = (0..101).map(|i| -1.0 + 0.02 * i as f64).collect();
    for (model, n) in models {
        for pos in [[0.3, 0.0], [2.0, 0.0], [4.5, 0.0]] {
            let f = |a: f64, b: f64| scalar_sw_flux(&model, a, b, n, pos, 0.0).unwrap();
            for (i, &a) in grid.iter().enumerate() {
                for (j, &b) in grid.iter().enumerate() {
                    let v = f(a, b);
                    if i + 1 < grid.len() {
                        assert!(
                            f(grid[i + 1], b) >= v - 1e-14,
                            "{model:?}: not nondecreasing in u_L at ({a}, {b})"
                        );
                    }
                    if j + 1 < grid.len() {
                        assert!(
                            f(a, grid[j + 1]) <= v + 1e-14,
                            "{model:?}: not nonincreasing in u_R at ({a}, {b})"
                        );
                    }
                }
            }
        }
    }
}

pub fn right_and_left_eigenvectors_are_inverse() {
    let mut r = rng();
    for model in system_models() {
        for _ in 0..500 {
            let u = random_state(&model, &mut r);
            let n = random_normal(&model, &mut r);
            let e = model.eigen_normal(&u, n, [0.0, 0.0], 0.0).unwrap();
            let m = model.n_comp();
            for i in 0..m {
                for j in 0..m {
                    let s: f64 = (0..m).map(|k| e.r[i][k] * e.l[k][j]).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((s - expect).abs() < 1e-10, "{model:?} {u:?}: (RL)[{i}][{j}] = {s}");
                }
            }
        }
    }
}

pub fn moment_and_interpolation_transforms_agree() {
    let mut r = rng();
    for model in system_models() {
        let m = model.n_comp();
        let u = random_state(&model, &mut r);
        let n = random_normal(&model, &mut r);
        let l = model.eigen_normal(&u, n, [0.0, 0.0], 0.0).unwrap().l;
        for k in 0..=5 {
            let sampler = if model.dim() == 1 {
                InterpSampler::gauss_1d(k).unwrap()
            } else {
                InterpSampler::lattice_2d(&Basis2D::new(k)).unwrap()
            };
            let nm = sampler.len();
            let a: Vec<f64> = (0..m * nm).map(|_| r.gen_range(-1.0..1.0)).collect();
            let b1 = moment_transform(&a, &l, m, nm);
            let b2 = interp_transform(&a, &l, m, nm, &sampler).unwrap();
            for (x, y) in b1.iter().zip(&b2) {
                assert!((x - y).abs() < 1e-10 * (1.0 + x.abs()), "{model:?} K={k}");
            }
        }
    }
}

fn random_field(n_cells: usize, m: usize, nm: usize, base: &State, r: &mut ChaCha8Rng, scale: f64) -> Field {
    let mut f = Field::zeros(n_cells, m, nm);
    for c in 0..n_cells {
        for k in 0..m {
            let co = f.coeffs_mut(c, k);
            co[0] = base[k] * scale + r.gen_range(-0.05..0.05) * scale;
            for v in co.iter_mut().skip(1) {
                *v = r.gen_range(-0.05..0.05) * scale;
            }
        }
    }
    f
}

fn limiter_configs() -> Vec<LimiterConfig> {
    let mut v = Vec::new();
    for base in [
        LimiterConfig::classical(0.0),
        LimiterConfig::is_tvb(0.0),
        LimiterConfig::is_l2(0.75, 0.25, 0.0),
    ] {
        for ch in [false, true] {
            v.push(base.with_indicator(Indicator::AlwaysOn).with_characteristic(ch));
        }
    }
    v
}

pub fn limiting_preserves_cell_means_exactly() {
    let mut r = rng();
    let euler1 = Model::Euler1D { gamma: GAMMA };
    let euler2 = Model::Euler2D { gamma: GAMMA };
    for cfg in limiter_configs() {
        for k in 1..=4 {
            for bc in [BoundaryKind::Periodic, BoundaryKind::Free, BoundaryKind::Reflective] {
                let mesh = Mesh1D::new(0.0, 1.0, 16).unwrap();
                let op = Dg1D::new(mesh, euler1, FluxScheme::Ausm, Boundaries::uniform(bc), k)
                    .unwrap()
                    .with_limiter(cfg)
                    .unwrap();
                let base = euler1.from_primitive(&[1.0, 0.3, 1.0, 0.0]);
                let u0 = random_field(16, 3, k + 1, &base, &mut r, 0.25);
                let mut u = u0.clone();
                op.limit(&mut u, 0.0).unwrap();
                for c in 0..16 {
                    for comp in 0..3 {
                        assert_eq!(u.coeffs(c, comp)[0], u0.coeffs(c, comp)[0]);
                    }
                }
            }
            let mesh = Mesh2D::new([0.0, 1.0], [0.0, 1.0], 6, 5).unwrap();
            let op = Dg2D::new(
                mesh,
                euler2,
                FluxScheme::VanLeer,
                Boundaries::uniform(BoundaryKind::Free),
                k,
            )
            .unwrap()
            .with_limiter(cfg)
            .unwrap();
            let nm = Basis2D::new(k).n_modes();
            let base = euler2.from_primitive(&[1.0, 0.3, -0.2, 1.0]);
            let u0 = random_field(30, 4, nm, &base, &mut r, (1.0f64 / 30.0).sqrt());
            let mut u = u0.clone();
            op.limit(&mut u, 0.0).unwrap();
            for c in 0..30 {
                for comp in 0..4 {
                    assert_eq!(u.coeffs(c, comp)[0], u0.coeffs(c, comp)[0]);
                }
            }
        }
    }
}

/// Objective of the optimisation limiters on the free modes.
fn objective(m_is: &DMatrix<f64>, a: &[f64], old: &[f64], w_is: f64, w_l2: f64) -> f64 {
    let v = DVector::from_column_slice(a);
    let is = 0.5 * (v.transpose() * m_is * &v)[(0, 0)];
    let l2: f64 = a.iter().zip(old).map(|(x, y)| (x - y).powi(2)).sum();
    w_is * is + w_l2 * l2
}

/// Orthonormal basis of the null space of the constraint rows.
fn null_space(phi_t: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let n = phi_t.ncols();
    let svd = phi_t.transpose().svd(true, false);
    let u = svd.u.unwrap();
    // Columns of the full left singular basis of Φ are not available from the
    // thin SVD; complete them by Gram–Schmidt against the range of Φ.
    let rank = svd.singular_values.iter().filter(|s| **s > 1e-12).count();
    let mut basis: Vec<DVector<f64>> = (0..rank).map(|i| u.column(i).into_owned()).collect();
    let mut null = Vec::new();
    for e in 0..n {
        let mut v = DVector::zeros(n);
        v[e] = 1.0;
        for b in &basis {
            let p = b.dot(&v);
            v -= b * p;
        }
        if v.norm() > 1e-8 {
            v /= v.norm();
            basis.push(v.clone());
            null.push(v);
        }
    }
    null
}

pub fn saddle_solutions_satisfy_constraints_and_dominate_feasible_samples() {
    let mut r = rng();
    for (w_is, w_l2) in [(1.0, 0.0), (0.75, 0.25), (0.8, 0.2)] {
        let cfg = if w_l2 == 0.0 {
            LimiterConfig::is_tvb(0.0)
        } else {
            LimiterConfig::is_l2(w_is, w_l2, 0.0)
        };
        for k in 2..=5 {
            // 1D
            let dx = r.gen_range(0.01..0.5);
            let t = Tables1D::new(k, dx, &cfg);
            for _ in 0..20 {
                let coeffs: Vec<f64> = (0..=k).map(|_| r.gen_range(-1.0..1.0)).collect();
                let targets = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
                let out = reconstruct_1d(&coeffs, targets, (0.0, 0.0), &t).unwrap();
                assert_eq!(out[0], coeffs[0]);
                let (l, rt) = t.ends(&out);
                assert!((l - targets.0).abs() < 1e-10 * (1.0 + targets.0.abs()));
                assert!((rt - targets.1).abs() < 1e-10 * (1.0 + targets.1.abs()));
                let best = objective(&t.m_is, &out[1..], &coeffs[1..], w_is, w_l2);
                let null = null_space(&t.phi_t);
                for _ in 0..50 {
                    let mut cand = DVector::from_column_slice(&out[1..]);
                    for v in &null {
                        cand += v * r.gen_range(-1.0..1.0);
                    }
                    let val = objective(&t.m_is, cand.as_slice(), &coeffs[1..], w_is, w_l2);
                    assert!(val >= best - 1e-9 * (1.0 + best.abs()), "1D K={k}: {val} < {best}");
                }
            }
            // 2D
            let basis = Basis2D::new(k);
            let (dx, dy) = (r.gen_range(0.01..0.5), r.gen_range(0.01..0.5));
            let t = Tables2D::new(&basis, dx, dy, &cfg);
            let nm = basis.n_modes();
            for _ in 0..20 {
                let coeffs: Vec<f64> = (0..nm).map(|_| r.gen_range(-1.0..1.0)).collect();
                let targets = [0; 4].map(|_| r.gen_range(-2.0..2.0));
                let out = reconstruct_2d(&coeffs, targets, [0.0; 4], &t).unwrap();
                assert_eq!(out[0], coeffs[0]);
                let e = t.edge_means(&out);
                for (got, want) in [e.left, e.right, e.bottom, e.top].iter().zip(targets) {
                    assert!((got - want).abs() < 1e-10 * (1.0 + want.abs()), "2D K={k}");
                }
                let best = objective(&t.m_is, &out[1..], &coeffs[1..], w_is, w_l2);
                let null = null_space(&t.gamma_t);
                for _ in 0..50 {
                    let mut cand = DVector::from_column_slice(&out[1..]);
                    for v in &null {
                        cand += v * r.gen_range(-1.0..1.0);
                    }
                    let val = objective(&t.m_is, cand.as_slice(), &coeffs[1..], w_is, w_l2);
                    assert!(val >= best - 1e-9 * (1.0 + best.abs()), "2D K={k}: {val} < {best}");
                }
            }
        }
    }
}

pub fn tvb_corrections_leave_smooth_data_alone() {
    // Linear data: the minmod picks the own deviation and nothing is flagged.
    let cfg = LimiterConfig::is_tvb(0.0);
    let t = Tables1D::new(2, 0.1, &cfg);
    let slope = 2.0;
    let coeffs = [1.0 * 0.1f64.sqrt(), slope * 0.1 / (12.0f64).sqrt() * 0.1f64.sqrt(), 0.0];
    let c = tvb_corrections_1d(&coeffs, 1.0 - slope * 0.1, 1.0 + slope * 0.1, &t, 0.0);
    assert!(!c.changed, "{c:?}");
    let basis = Basis2D::new(2);
    let t2 = Tables2D::new(&basis, 0.1, 0.1, &cfg);
    let mean = 0.1;
    let mut co = vec![0.0; basis.n_modes()];
    co[0] = mean * 1.0;
    let c2 = tvb_corrections_2d(&co, [1.0; 4], &t2, 0.0);
    assert!(!c2.changed);
}

fn total_mass(f: &Field) -> Vec<f64> {
    (0..f.n_comp)
        .map(|k| (0..f.n_cells).map(|c| f.coeffs(c, k)[0]).sum())
        .collect()
}

pub fn periodic_runs_conserve_mass_per_step() {
    let euler1 = Model::Euler1D { gamma: GAMMA };
    let periodic = Boundaries::uniform(BoundaryKind::Periodic);
    let cases: Vec<(Box<dyn SpatialOperator>, Field)> = vec![
        {
            let op = Dg1D::new(
                Mesh1D::new(0.0, 2.0, 32).unwrap(),
                euler1,
                FluxScheme::Ausm,
                periodic,
                3,
            )
            .unwrap()
            .with_limiter(LimiterConfig::is_l2(0.8, 0.2, 1.0).with_characteristic(true))
            .unwrap();
            let u = op.project(|x| euler1.from_primitive(&[1.0 + 0.5 * (x > 1.0) as i32 as f64, 0.4, 1.0, 0.0]));
            (Box::new(op), u)
        },
        {
            let op = Dg1D::new(
                Mesh1D::new(0.0, 6.0, 40).unwrap(),
                Model::Burgers1D,
                FluxScheme::ScalarSw,
                periodic,
                2,
            )
            .unwrap()
            .with_limiter(LimiterConfig::is_tvb(1.0))
            .unwrap();
            let u = op.project(|x| [x.sin() + 0.5, 0.0, 0.0, 0.0]);
            (Box::new(op), u)
        },
        {
            let m = Model::Euler2D { gamma: GAMMA };
            let op = Dg2D::new(
                Mesh2D::new([0.0, 1.0], [0.0, 1.0], 8, 8).unwrap(),
                m,
                FluxScheme::StegerWarming { delta: 0.0 },
                periodic,
                2,
            )
            .unwrap()
            .with_limiter(LimiterConfig::is_tvb(1.0).with_characteristic(true))
            .unwrap();
            let u = op.project(|x, y| {
                let rho = if (x - 0.5).powi(2) + (y - 0.5).powi(2) < 0.05 {
                    2.0
                } else {
                    1.0
                };
                m.from_primitive(&[rho, 0.3, -0.2, 1.0])
            });
            (Box::new(op), u)
        },
        {
            let m = Model::Advection2D(Velocity2D::Swirl { period: 0.75 });
            let op = Dg2D::new(
                Mesh2D::new([-3.0, 3.0], [-3.0, 3.0], 8, 8).unwrap(),
                m,
                FluxScheme::ScalarSw,
                periodic,
                2,
            )
            .unwrap();
            let u = op.project(|x, y| {
                [
                    (-(x * x + y * y)).exp() + 1e-3 * (7.0 * x).sin() * (5.0 * y).cos(),
                    0.0,
                    0.0,
                    0.0,
                ]
            });
            (Box::new(op), u)
        },
    ];
    for (op, mut u) in cases {
        let mut t = 0.0;
        for _ in 0..10 {
            let before = total_mass(&u);
            let dt = op.stable_dt(&u, 0.1, t);
            let (next, _) = Integrator::TvdRk3.step_operator(op.as_ref(), &u, dt, t).unwrap();
            let after = total_mass(&next);
            for (b, a) in before.iter().zip(&after) {
                assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "mass drift {}", a - b);
            }
            u = next;
            t += dt;
        }
    }
}

pub fn free_stream_is_preserved_in_2d() {
    let euler = Model::Euler2D { gamma: GAMMA };
    let swe = Model::Swe2D { g: GRAVITY };
    let models = [
        (euler, euler.from_primitive(&[1.3, 0.4, -0.7, 2.0])),
        (swe, swe.from_primitive(&[2.0, 0.3, 0.5, 0.0])),
    ];
    for (model, state) in models {
        for scheme in system_schemes() {
            for bc in [BoundaryKind::Periodic, BoundaryKind::Free] {
                for k in [1, 3] {
                    let op = Dg2D::new(
                        Mesh2D::new([0.0, 1.0], [0.0, 2.0], 6, 5).unwrap(),
                        model,
                        scheme,
                        Boundaries::uniform(bc),
                        k,
                    )
                    .unwrap();
                    let u = op.project(|_, _| state);
                    let mut res = op.zeros();
                    op.residual(&u, 0.0, &mut res).unwrap();
                    let scale = u.data.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                    assert!(
                        res.data.iter().all(|v| v.abs() <= 1e-12 * scale.max(1.0)),
                        "{model:?} {scheme:?} {bc:?} K={k}"
                    );
                    let dt = op.stable_dt(&u, 0.1, 0.0);
                    let (next, _) = Integrator::Rk4.step_operator(&op, &u, dt, 0.0).unwrap();
                    for (a, b) in next.data.iter().zip(&u.data) {
                        assert!(
                            (a - b).abs() <= 1e-12 * scale.max(1.0),
                            "{model:?} {scheme:?} {bc:?} K={k}: {a} vs {b}"
                        );
                    }
                }
            }
        }
    }
}

/// Amplification factor of one step of `u' = z u` with `dt = 1`.
fn amplification(int: Integrator, z: f64) -> f64 {
    let mut u = Field::zeros(1, 1, 1);
    u.data[0] = 1.0;
    let (next, _) = int
        .step(
            &u,
            1.0,
            0.0,
            |f, _, out| {
                out.data[0] = z * f.data[0];
                Ok(())
            },
            |_, _| Ok(LimitStats::default()),
        )
        .unwrap();
    next.data[0]
}

/// Ten-stage fourth-order SSP method in two-register low-storage form.
fn ssprk104_low_storage(z: f64) -> f64 {
    let l = |q: f64| z * q;
    let mut q1 = 1.0;
    let mut q2 = 1.0;
    for _ in 0..5 {
        q1 += l(q1) / 6.0;
    }
    q2 = q2 / 25.0 + 9.0 * q1 / 25.0;
    q1 = 15.0 * q2 - 5.0 * q1;
    for _ in 0..4 {
        q1 += l(q1) / 6.0;
    }
    q2 + 0.6 * q1 + l(q1) / 10.0
}

pub fn runge_kutta_amplification_factors() {
    for z in [-2.5f64, -1.0, -0.37, 0.0, 0.2, 0.9] {
        let rk3 = 1.0 + z + z * z / 2.0 + z.powi(3) / 6.0;
        let rk4 = rk3 + z.powi(4) / 24.0;
        assert!((amplification(Integrator::TvdRk3, z) - rk3).abs() <= 1e-14 * (1.0 + rk3.abs()));
        assert!((amplification(Integrator::Rk4, z) - rk4).abs() <= 1e-14 * (1.0 + rk4.abs()));
        let s = ssprk104_low_storage(z);
        assert!(
            (amplification(Integrator::Ssprk104, z) - s).abs() <= 1e-14 * (1.0 + s.abs()),
            "z = {z}"
        );
    }
    // Fourth-order agreement with exp(z) for the ten-stage method.
    for z in [1e-2f64, -2e-2, 4e-2] {
        let diff = (amplification(Integrator::Ssprk104, z) - z.exp()).abs();
        assert!(diff <= z.abs().powi(5), "z = {z}: {diff}");
    }
}

/// Every property check, by name (driven by the acceptance runner).
#[allow(dead_code)]
pub const ALL: &[(&str, fn())] = &[
    (
        "flux_split_reproduces_the_physical_flux",
        flux_split_reproduces_the_physical_flux,
    ),
    ("numerical_fluxes_are_consistent", numerical_fluxes_are_consistent),
    (
        "scalar_steger_warming_flux_is_monotone_on_a_grid",
        scalar_steger_warming_flux_is_monotone_on_a_grid,
    ),
    (
        "right_and_left_eigenvectors_are_inverse",
        right_and_left_eigenvectors_are_inverse,
    ),
    (
        "moment_and_interpolation_transforms_agree",
        moment_and_interpolation_transforms_agree,
    ),
    (
        "limiting_preserves_cell_means_exactly",
        limiting_preserves_cell_means_exactly,
    ),
    (
        "saddle_solutions_satisfy_constraints_and_dominate_feasible_samples",
        saddle_solutions_satisfy_constraints_and_dominate_feasible_samples,
    ),
    (
        "tvb_corrections_leave_smooth_data_alone",
        tvb_corrections_leave_smooth_data_alone,
    ),
    (
        "periodic_runs_conserve_mass_per_step",
        periodic_runs_conserve_mass_per_step,
    ),
    ("free_stream_is_preserved_in_2d", free_stream_is_preserved_in_2d),
    ("runge_kutta_amplification_factors", runge_kutta_amplification_factors),
];
