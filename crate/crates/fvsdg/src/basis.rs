//! Orthonormal modal bases on intervals and rectangles, and L² projection.
//!
//! The 1D basis on a cell of width `Δx` centred at `x_c` is
//! `φ_ℓ(x) = √((2ℓ+1)/Δx) · P_ℓ(2(x − x_c)/Δx)`, so the mass matrix is the
//! identity and `α_0 = √Δx · mean`. The 2D basis consists of tensor products
//! `φ_p(x) φ_q(y)` with total degree `p + q ≤ K`, ordered by total degree and,
//! within a degree block, by descending x-degree.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::mesh::{Mesh1D, Mesh2D};
use crate::models::State;
use crate::quadrature::{gauss_rule, QuadratureRule};

/// Tolerance used when checking that a point lies in a cell closure.
const INSIDE_TOL: f64 = 1e-12;

/// Values of the `d`-th derivative of `P_0 … P_n` at `s ∈ [-1, 1]`.
///
/// Uses the differentiated three-term recurrence
/// `(n+1) P_{n+1}^{(d)} = (2n+1)(s P_n^{(d)} + d P_n^{(d-1)}) − n P_{n-1}^{(d)}`.
pub fn legendre_derivatives(n: usize, s: f64, d: usize) -> Vec<f64> {
    // table[j][l] = P_l^{(j)}(s)
    let mut prev: Vec<f64> = Vec::new();
    let mut cur = vec![0.0; n + 1];
    for j in 0..=d {
        cur = vec![0.0; n + 1];
        if j == 0 {
            cur[0] = 1.0;
        }
        if n >= 1 {
            cur[1] = if j == 0 {
                s
            } else if j == 1 {
                1.0
            } else {
                0.0
            };
        }
        for l in 1..n {
            let lf = l as f64;
            let lower = if j > 0 { j as f64 * prev[l] } else { 0.0 };
            cur[l + 1] = ((2.0 * lf + 1.0) * (s * cur[l] + lower) - lf * cur[l - 1]) / (lf + 1.0);
        }
        prev = cur.clone();
    }
    cur
}

/// Geometry of a 1D cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell1D {
    /// Cell centre.
    pub center: f64,
    /// Cell width `Δx`.
    pub width: f64,
}

/// Geometry of a rectangular cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell2D {
    /// Cell centre `(x_c, y_c)`.
    pub center: [f64; 2],
    /// Cell widths `(Δx, Δy)`.
    pub width: [f64; 2],
}

/// Orthonormal Legendre basis of degree `K` on an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basis1D {
    /// Polynomial degree `K`.
    pub degree: usize,
}

impl Basis1D {
    /// Basis of degree `degree`.
    pub fn new(degree: usize) -> Self {
        Self { degree }
    }

    /// Number of modes `K + 1`.
    pub fn n_modes(&self) -> usize {
        self.degree + 1
    }

    /// `d`-th ξ-derivative of the unit-width basis at reference point `ξ ∈ [-1/2, 1/2]`.
    ///
    /// Physical values follow as `eval_ref(ξ, d) / (Δx^d √Δx)`.
    pub fn eval_ref(&self, xi: f64, deriv: usize) -> Vec<f64> {
        let p = legendre_derivatives(self.degree, 2.0 * xi, deriv);
        let scale = 2f64.powi(deriv as i32);
        p.iter()
            .enumerate()
            .map(|(l, v)| (2.0 * l as f64 + 1.0).sqrt() * scale * v)
            .collect()
    }

    /// `deriv`-th derivative of every mode at physical point `x` of `cell`.
    pub fn eval(&self, cell: &Cell1D, x: f64, deriv: usize) -> Result<Vec<f64>> {
        let xi = (x - cell.center) / cell.width;
        if xi.abs() > 0.5 + INSIDE_TOL {
            return Err(Error::PointOutsideCell { point: vec![x] });
        }
        let factor = 1.0 / (cell.width.powi(deriv as i32) * cell.width.sqrt());
        Ok(self.eval_ref(xi, deriv).into_iter().map(|v| v * factor).collect())
    }

    /// Evaluation matrix `[point][mode]` for a list of physical points.
    pub fn eval_points(&self, cell: &Cell1D, points: &[f64], deriv: usize) -> Result<Vec<Vec<f64>>> {
        points.iter().map(|&x| self.eval(cell, x, deriv)).collect()
    }
}

/// Orthonormal total-degree tensor basis on a rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis2D {
    /// Polynomial degree `K`.
    pub degree: usize,
    /// Mode multi-indices `(p, q)` in storage order.
    pub modes: Vec<(usize, usize)>,
}

impl Basis2D {
    /// Basis of degree `degree`, modes ordered by total degree then descending x-degree.
    pub fn new(degree: usize) -> Self {
        let mut modes = Vec::new();
        for n in 0..=degree {
            for p in (0..=n).rev() {
                modes.push((p, n - p));
            }
        }
        Self { degree, modes }
    }

    /// Number of modes `(K+1)(K+2)/2`.
    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    /// Derivative `∂ξ^dx ∂η^dy` of the unit-square basis at reference point `(ξ, η)`.
    pub fn eval_ref(&self, xi: f64, eta: f64, deriv: (usize, usize)) -> Vec<f64> {
        let b = Basis1D::new(self.degree);
        let fx = b.eval_ref(xi, deriv.0);
        let fy = b.eval_ref(eta, deriv.1);
        self.modes.iter().map(|&(p, q)| fx[p] * fy[q]).collect()
    }

    /// Derivative `∂x^dx ∂y^dy` of every mode at a physical point of `cell`.
    pub fn eval(&self, cell: &Cell2D, point: [f64; 2], deriv: (usize, usize)) -> Result<Vec<f64>> {
        let xi = (point[0] - cell.center[0]) / cell.width[0];
        let eta = (point[1] - cell.center[1]) / cell.width[1];
        if xi.abs() > 0.5 + INSIDE_TOL || eta.abs() > 0.5 + INSIDE_TOL {
            return Err(Error::PointOutsideCell { point: point.to_vec() });
        }
        let [dx, dy] = cell.width;
        let factor = 1.0 / (dx.powi(deriv.0 as i32) * dy.powi(deriv.1 as i32) * (dx * dy).sqrt());
        Ok(self.eval_ref(xi, eta, deriv).into_iter().map(|v| v * factor).collect())
    }

    /// Evaluation matrix `[point][mode]` for a list of physical points.
    pub fn eval_points(&self, cell: &Cell2D, points: &[[f64; 2]], deriv: (usize, usize)) -> Result<Vec<Vec<f64>>> {
        points.iter().map(|&p| self.eval(cell, p, deriv)).collect()
    }
}

/// Default quadrature for degree `K`: `K + 2` Gauss points.
pub fn default_rule(degree: usize) -> QuadratureRule {
    gauss_rule((degree + 2).min(crate::quadrature::MAX_POINTS)).expect("K + 2 Gauss points are always available")
}

/// L² projection of `f` onto the degree-`K` basis on every cell of a 1D mesh.
///
/// `f` returns a state whose first `n_comp` entries are used.
pub fn project_1d<F>(mesh: &Mesh1D, basis: &Basis1D, n_comp: usize, f: F) -> Field
where
    F: Fn(f64) -> State,
{
    let rule = default_rule(basis.degree);
    let table: Vec<Vec<f64>> = rule.points.iter().map(|&xi| basis.eval_ref(xi, 0)).collect();
    let nm = basis.n_modes();
    let mut field = Field::zeros(mesh.n, n_comp, nm);
    let sq = mesh.dx.sqrt();
    for i in 0..mesh.n {
        let xc = mesh.center(i);
        for (q, &xi) in rule.points.iter().enumerate() {
            let u = f(xc + xi * mesh.dx);
            let w = rule.weights[q] * sq;
            for c in 0..n_comp {
                let coeffs = field.coeffs_mut(i, c);
                for l in 0..nm {
                    coeffs[l] += w * u[c] * table[q][l];
                }
            }
        }
    }
    field
}

/// L² projection of `f` onto the degree-`K` basis on every cell of a 2D mesh.
pub fn project_2d<F>(mesh: &Mesh2D, basis: &Basis2D, n_comp: usize, f: F) -> Field
where
    F: Fn(f64, f64) -> State,
{
    let rule = default_rule(basis.degree);
    let pts = rule.tensor();
    let table: Vec<Vec<f64>> = pts
        .iter()
        .map(|&(xi, eta, _)| basis.eval_ref(xi, eta, (0, 0)))
        .collect();
    let nm = basis.n_modes();
    let mut field = Field::zeros(mesh.n_cells(), n_comp, nm);
    let sq = (mesh.dx * mesh.dy).sqrt();
    for cell in 0..mesh.n_cells() {
        let [xc, yc] = mesh.center(cell);
        for (q, &(xi, eta, wq)) in pts.iter().enumerate() {
            let u = f(xc + xi * mesh.dx, yc + eta * mesh.dy);
            let w = wq * sq;
            for c in 0..n_comp {
                let coeffs = field.coeffs_mut(cell, c);
                for l in 0..nm {
                    coeffs[l] += w * u[c] * table[q][l];
                }
            }
        }
    }
    field
}
