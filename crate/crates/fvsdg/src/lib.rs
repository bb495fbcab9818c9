//! Flux-vector-splitting Runge–Kutta discontinuous Galerkin (FVS-RKDG) solvers
//! for one- and two-dimensional hyperbolic conservation laws.
//!
//! The crate provides orthonormal modal bases, uniform meshes with periodic,
//! free and reflective boundaries, Euler / shallow water / scalar models,
//! flux-vector splittings, DG residual assembly, explicit Runge–Kutta
//! integrators, optimization-based TVB(D)-minmod limiters with local
//! characteristic decomposition, and an experiment harness.

// Index loops mirror the modal/quadrature formulas; negated float
// comparisons deliberately treat NaN as failure.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cases;
pub mod characteristic;
pub mod dg;
pub mod dg2d;
pub mod error;
pub mod exact;
pub mod field;
pub mod flux;
pub mod harness;
pub mod limiter;
pub mod mesh;
pub mod models;
pub mod quadrature;
pub mod time;

pub use basis::{Basis1D, Basis2D, Cell1D, Cell2D};
pub use cases::{case_registry, find_case, Case, Domain};
pub use dg::{Dg1D, LimitStats, SpatialOperator};
pub use dg2d::Dg2D;
pub use error::{Error, Result};
pub use field::Field;
pub use flux::{FluxContext, FluxScheme, SplitFlux};
pub use harness::{convergence_study, run, ConvergenceTable, Discretization, ErrorNorms, Norm, RunConfig, RunOutcome};
pub use limiter::{CharTransformKind, FreezeAverage, Indicator, LimiterConfig, LimiterKind};
pub use mesh::{Boundaries, BoundaryKind, Mesh1D, Mesh2D, Side};
pub use models::{EigenStructure, Model, RoeState, State};
pub use quadrature::{gauss_rule, QuadratureRule};
pub use time::{integrate, integrate_partial, Integrator, RunReport, TimeConfig};
