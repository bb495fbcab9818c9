//! Gauss–Legendre quadrature on the reference interval `[-1/2, 1/2]`.
//!
//! Weights are normalized so that they sum to one, i.e. a rule approximates
//! the *mean* of a function over the reference interval. Physical integrals
//! are obtained by multiplying with the cell measure.

use crate::error::{Error, Result};

/// Largest supported number of Gauss points.
pub const MAX_POINTS: usize = 16;

/// A one-dimensional quadrature rule on `[-1/2, 1/2]` with unit total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    /// Abscissae in increasing order.
    pub points: Vec<f64>,
    /// Weights; they sum to one.
    pub weights: Vec<f64>,
    /// Highest polynomial degree integrated exactly.
    pub exactness: usize,
}

impl QuadratureRule {
    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the rule has no points (never true for constructed rules).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Mean of `f` over the reference interval.
    pub fn mean<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Tensor-product points `(xi, eta, weight)` on the reference square.
    pub fn tensor(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.len() * self.len());
        for (j, &eta) in self.points.iter().enumerate() {
            for (i, &xi) in self.points.iter().enumerate() {
                out.push((xi, eta, self.weights[i] * self.weights[j]));
            }
        }
        out
    }
}

/// Legendre polynomial `P_n(s)` and its derivative on `[-1, 1]`.
fn legendre_with_derivative(n: usize, s: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, s);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * s * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (s * p1 - p0) / (s * s - 1.0);
    (p1, dp)
}

/// The `n`-point Gauss–Legendre rule on `[-1/2, 1/2]`, exact for degree `2n - 1`.
///
/// Nodes are found by Newton iteration on `P_n` starting from the Chebyshev
/// approximation of the roots.
pub fn gauss_rule(n: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_POINTS).contains(&n) {
        return Err(Error::QuadratureRange(n));
    }
    let mut points = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut s = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, s);
            dp = d;
            let ds = p / d;
            s -= ds;
            if ds.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, s);
        if d.is_finite() {
            dp = d;
        }
        // Standard weight on [-1,1] is 2/((1-s^2) P'^2); halve for unit total weight.
        let w = 1.0 / ((1.0 - s * s) * dp * dp);
        points[i] = -0.5 * s;
        points[n - 1 - i] = 0.5 * s;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        points[n / 2] = 0.0;
    }
    Ok(QuadratureRule {
        points,
        weights,
        exactness: 2 * n - 1,
    })
}
