//! Local characteristic decomposition for limiting systems.
//!
//! At each cell edge the normal Jacobian is frozen at an average of the two
//! edge means, cell polynomials are mapped to characteristic variables by the
//! left eigenvectors `L`, limited componentwise and mapped back with `R`.
//! Two equivalent mappings are provided: the moment transform `B = L A` and
//! the interpolation transform (sample, rotate, re-interpolate).

use nalgebra::{DMatrix, DVector};

use crate::basis::{Basis1D, Basis2D};
use crate::error::{Error, Result};
use crate::limiter::FreezeAverage;
use crate::models::{EigenStructure, Mat, Model, State};
use crate::quadrature::gauss_rule;

/// Frozen interface state (arithmetic or Roe average of two edge means).
///
/// `other` is `None` on a domain boundary, in which case the interior edge mean is used.
pub fn interface_freeze(model: &Model, own: &State, other: Option<&State>, kind: FreezeAverage) -> Result<State> {
    let Some(other) = other else {
        return Ok(*own);
    };
    match kind {
        FreezeAverage::Arithmetic => {
            let mut s = [0.0; 4];
            for k in 0..4 {
                s[k] = 0.5 * (own[k] + other[k]);
            }
            Ok(s)
        }
        FreezeAverage::Roe => {
            if model.is_scalar() {
                return interface_freeze(model, own, Some(other), FreezeAverage::Arithmetic);
            }
            let r = model.roe_average(own, other)?;
            Ok(model.roe_to_conservative(&r))
        }
    }
}

/// Eigenstructure at an interface, falling back to the arithmetic average of
/// the two cell means when the edge-mean average is inadmissible.
///
/// Returns the structure and whether the fallback was used.
pub fn frozen_eigenstructure(
    model: &Model,
    own_edge: &State,
    other_edge: Option<&State>,
    own_mean: &State,
    other_mean: &State,
    kind: FreezeAverage,
    n: [f64; 2],
) -> Result<(EigenStructure, bool)> {
    let first =
        interface_freeze(model, own_edge, other_edge, kind).and_then(|s| model.eigen_normal(&s, n, [0.0, 0.0], 0.0));
    match first {
        Ok(e) => Ok((e, false)),
        Err(_) => {
            let s = interface_freeze(model, own_mean, Some(other_mean), FreezeAverage::Arithmetic)?;
            Ok((model.eigen_normal(&s, n, [0.0, 0.0], 0.0)?, true))
        }
    }
}

/// Moment characteristic transform `B = L A` of a component-major modal
/// matrix `a` (`m × n_modes`).
pub fn moment_transform(a: &[f64], l: &Mat, m: usize, n_modes: usize) -> Vec<f64> {
    let mut b = vec![0.0; m * n_modes];
    for i in 0..m {
        for j in 0..m {
            let lij = l[i][j];
            if lij == 0.0 {
                continue;
            }
            for k in 0..n_modes {
                b[i * n_modes + k] += lij * a[j * n_modes + k];
            }
        }
    }
    b
}

/// Sample points and factorised sampling matrix for the interpolation transform.
#[derive(Clone, Debug)]
pub struct InterpSampler {
    /// Sampling matrix `ℙ[point][mode]` (unit-measure reference basis values).
    pub p: DMatrix<f64>,
    lu: nalgebra::linalg::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl InterpSampler {
    /// Builds a sampler from a sampling matrix; fails if it is singular.
    pub fn new(p: DMatrix<f64>) -> Result<Self> {
        let lu = p.clone().lu();
        if !lu.is_invertible() {
            return Err(Error::Singular("interpolation sample set"));
        }
        Ok(Self { p, lu })
    }

    /// Gauss–Legendre nodes of a 1D cell (`K + 1` points).
    pub fn gauss_1d(k: usize) -> Result<Self> {
        let basis = Basis1D::new(k);
        let rule = gauss_rule(k + 1)?;
        let n = k + 1;
        let p = DMatrix::from_fn(n, n, |i, j| basis.eval_ref(rule.points[i], 0)[j]);
        Self::new(p)
    }

    /// Reference points of a 1D cell given explicitly (`ξ ∈ [−1/2, 1/2]`).
    pub fn points_1d(k: usize, points: &[f64]) -> Result<Self> {
        let basis = Basis1D::new(k);
        if points.len() != k + 1 {
            return Err(Error::Config("sample count must equal the mode count".into()));
        }
        let p = DMatrix::from_fn(k + 1, k + 1, |i, j| basis.eval_ref(points[i], 0)[j]);
        Self::new(p)
    }

    /// Principal-lattice points `{(i, j) : i + j ≤ K}` mapped affinely into the
    /// reference square; unisolvent for total degree `K`.
    pub fn lattice_2d(basis: &Basis2D) -> Result<Self> {
        let k = basis.degree;
        let mut pts = Vec::new();
        for j in 0..=k {
            for i in 0..=(k - j) {
                let (xi, eta) = if k == 0 {
                    (0.0, 0.0)
                } else {
                    (-0.4 + 0.8 * i as f64 / k as f64, -0.4 + 0.8 * j as f64 / k as f64)
                };
                pts.push((xi, eta));
            }
        }
        let n = basis.n_modes();
        let p = DMatrix::from_fn(n, n, |r, c| basis.eval_ref(pts[r].0, pts[r].1, (0, 0))[c]);
        Self::new(p)
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.p.nrows()
    }

    /// Whether the sampler is empty.
    pub fn is_empty(&self) -> bool {
        self.p.nrows() == 0
    }
}

/// Interpolation characteristic transform: sample `𝕐 = ℙ A`, rotate
/// `Ỹ = L 𝕐` pointwise, solve `ℙ ã = Ỹ` per characteristic component.
pub fn interp_transform(a: &[f64], l: &Mat, m: usize, n_modes: usize, sampler: &InterpSampler) -> Result<Vec<f64>> {
    let np = sampler.len();
    if np != n_modes {
        return Err(Error::Config("sample count must equal the mode count".into()));
    }
    // Y[point][comp]
    let mut y = vec![[0.0; 4]; np];
    for (pt, yp) in y.iter_mut().enumerate() {
        for c in 0..m {
            let mut s = 0.0;
            for k in 0..n_modes {
                s += sampler.p[(pt, k)] * a[c * n_modes + k];
            }
            yp[c] = s;
        }
    }
    let mut out = vec![0.0; m * n_modes];
    for i in 0..m {
        let rhs = DVector::from_fn(np, |pt, _| (0..m).map(|j| l[i][j] * y[pt][j]).sum::<f64>());
        let sol = sampler
            .lu
            .solve(&rhs)
            .ok_or(Error::Singular("interpolation sample set"))?;
        out[i * n_modes..(i + 1) * n_modes].copy_from_slice(sol.as_slice());
    }
    Ok(out)
}
