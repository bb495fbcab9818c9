//! Uniform 1D and 2D rectangular meshes, neighbour topology and boundary ghost states.

use crate::basis::{Cell1D, Cell2D};
use crate::error::{Error, Result};
use crate::models::{Model, State};

/// Boundary treatment on one side of the domain.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum BoundaryKind {
    /// Wrap to the opposite side.
    Periodic,
    /// Zero-gradient outflow: the ghost copies the interior trace.
    Free,
    /// Slip wall: the ghost copies the interior trace with normal momentum negated.
    Reflective,
}

impl std::str::FromStr for BoundaryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" => Ok(Self::Periodic),
            "free" | "outflow" => Ok(Self::Free),
            "reflective" | "reflect" | "wall" => Ok(Self::Reflective),
            _ => Err(Error::Config(format!("unknown boundary kind `{s}`"))),
        }
    }
}

/// Side of a cell or of the domain.
#[derive(Clone, Copy, Debug, Eq, PartialEq, Hash)]
pub enum Side {
    /// `x = a` side (outward normal `(-1, 0)`).
    Left,
    /// `x = b` side (outward normal `(1, 0)`).
    Right,
    /// `y = c` side (outward normal `(0, -1)`).
    Bottom,
    /// `y = d` side (outward normal `(0, 1)`).
    Top,
}

impl Side {
    /// All four sides in the canonical order L, R, B, T.
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

    /// Unit outward normal of this side.
    pub fn normal(self) -> [f64; 2] {
        match self {
            Side::Left => [-1.0, 0.0],
            Side::Right => [1.0, 0.0],
            Side::Bottom => [0.0, -1.0],
            Side::Top => [0.0, 1.0],
        }
    }

    /// The opposite side.
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Bottom => Side::Top,
            Side::Top => Side::Bottom,
        }
    }
}

/// Boundary kinds for each side of a domain (`bottom`/`top` unused in 1D).
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub struct Boundaries {
    /// Left (`x = a`) boundary.
    pub left: BoundaryKind,
    /// Right (`x = b`) boundary.
    pub right: BoundaryKind,
    /// Bottom (`y = c`) boundary.
    pub bottom: BoundaryKind,
    /// Top (`y = d`) boundary.
    pub top: BoundaryKind,
}

impl Boundaries {
    /// The same kind on every side.
    pub fn uniform(kind: BoundaryKind) -> Self {
        Self {
            left: kind,
            right: kind,
            bottom: kind,
            top: kind,
        }
    }

    /// Kind on a given side.
    pub fn get(&self, side: Side) -> BoundaryKind {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
            Side::Bottom => self.bottom,
            Side::Top => self.top,
        }
    }

    /// Checks that periodic sides come in opposite pairs and that walls are
    /// only used with systems that carry momentum.
    pub fn validate(&self, model: &Model) -> Result<()> {
        let pairs = [(self.left, self.right), (self.bottom, self.top)];
        for (a, b) in pairs {
            if (a == BoundaryKind::Periodic) != (b == BoundaryKind::Periodic) {
                return Err(Error::Boundary(
                    "a periodic side requires the opposite side to be periodic".into(),
                ));
            }
        }
        let any_wall = [self.left, self.right, self.bottom, self.top].contains(&BoundaryKind::Reflective);
        if any_wall && model.momentum_components().is_none() {
            return Err(Error::Boundary(format!(
                "reflective boundaries are not defined for the scalar model {}",
                model.name()
            )));
        }
        Ok(())
    }
}

/// Ghost (exterior) trace for a boundary face.
///
/// `wrapped` must hold the trace of the periodic partner cell when `kind` is
/// [`BoundaryKind::Periodic`]. `normal` is the outward normal of the face.
pub fn ghost_state(
    kind: BoundaryKind,
    normal: [f64; 2],
    interior: &State,
    wrapped: Option<&State>,
    model: &Model,
) -> Result<State> {
    match kind {
        BoundaryKind::Periodic => wrapped
            .copied()
            .ok_or_else(|| Error::Boundary("periodic ghost requires the wrapped trace".into())),
        BoundaryKind::Free => Ok(*interior),
        BoundaryKind::Reflective => reflect(interior, normal, model),
    }
}

/// Copy of `u` with its momentum component along `normal` negated.
pub fn reflect(u: &State, normal: [f64; 2], model: &Model) -> Result<State> {
    let (mx, my) = model.momentum_components().ok_or_else(|| {
        Error::Boundary(format!(
            "reflective boundaries are not defined for the scalar model {}",
            model.name()
        ))
    })?;
    let mut g = *u;
    match my {
        None => g[mx] = -u[mx],
        Some(my) => {
            let mn = u[mx] * normal[0] + u[my] * normal[1];
            g[mx] = u[mx] - 2.0 * mn * normal[0];
            g[my] = u[my] - 2.0 * mn * normal[1];
        }
    }
    Ok(g)
}

/// Uniform partition of `[a, b]` into `n` cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mesh1D {
    /// Left end of the domain.
    pub a: f64,
    /// Right end of the domain.
    pub b: f64,
    /// Number of cells.
    pub n: usize,
    /// Cell width.
    pub dx: f64,
}

impl Mesh1D {
    /// Uniform mesh; requires `b > a` and `n ≥ 1`.
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(b > a) || n == 0 {
            return Err(Error::Config(format!("invalid 1D mesh [{a}, {b}] with {n} cells")));
        }
        Ok(Self {
            a,
            b,
            n,
            dx: (b - a) / n as f64,
        })
    }

    /// Centre of cell `i`.
    pub fn center(&self, i: usize) -> f64 {
        self.a + (i as f64 + 0.5) * self.dx
    }

    /// Coordinate of interface `i` (`x_{i-1/2}`), `0 ≤ i ≤ n`.
    pub fn interface(&self, i: usize) -> f64 {
        self.a + i as f64 * self.dx
    }

    /// Geometry of cell `i`.
    pub fn cell(&self, i: usize) -> Cell1D {
        Cell1D {
            center: self.center(i),
            width: self.dx,
        }
    }

    /// Neighbouring cell across `side` (`Left`/`Right`), `None` at a non-periodic boundary.
    pub fn neighbor(&self, i: usize, side: Side, bc: &Boundaries) -> Option<usize> {
        match side {
            Side::Left if i > 0 => Some(i - 1),
            Side::Left if bc.left == BoundaryKind::Periodic => Some(self.n - 1),
            Side::Right if i + 1 < self.n => Some(i + 1),
            Side::Right if bc.right == BoundaryKind::Periodic => Some(0),
            _ => None,
        }
    }
}

/// Uniform `nx × ny` partition of `[x0, x1] × [y0, y1]`; cell `(i, j)` has index `j·nx + i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mesh2D {
    /// Lower x bound.
    pub x0: f64,
    /// Upper x bound.
    pub x1: f64,
    /// Lower y bound.
    pub y0: f64,
    /// Upper y bound.
    pub y1: f64,
    /// Cells in x.
    pub nx: usize,
    /// Cells in y.
    pub ny: usize,
    /// Cell width in x.
    pub dx: f64,
    /// Cell width in y.
    pub dy: f64,
}

impl Mesh2D {
    /// Uniform rectangular mesh.
    pub fn new(x: [f64; 2], y: [f64; 2], nx: usize, ny: usize) -> Result<Self> {
        if !(x[1] > x[0]) || !(y[1] > y[0]) || nx == 0 || ny == 0 {
            return Err(Error::Config(format!(
                "invalid 2D mesh {x:?}x{y:?} with {nx}x{ny} cells"
            )));
        }
        Ok(Self {
            x0: x[0],
            x1: x[1],
            y0: y[0],
            y1: y[1],
            nx,
            ny,
            dx: (x[1] - x[0]) / nx as f64,
            dy: (y[1] - y[0]) / ny as f64,
        })
    }

    /// Total number of cells.
    pub fn n_cells(&self) -> usize {
        self.nx * self.ny
    }

    /// Linear index of cell `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// `(i, j)` of a linear cell index.
    pub fn ij(&self, cell: usize) -> (usize, usize) {
        (cell % self.nx, cell / self.nx)
    }

    /// Centre of a cell.
    pub fn center(&self, cell: usize) -> [f64; 2] {
        let (i, j) = self.ij(cell);
        [
            self.x0 + (i as f64 + 0.5) * self.dx,
            self.y0 + (j as f64 + 0.5) * self.dy,
        ]
    }

    /// Geometry of a cell.
    pub fn cell(&self, cell: usize) -> Cell2D {
        Cell2D {
            center: self.center(cell),
            width: [self.dx, self.dy],
        }
    }

    /// Cell area.
    pub fn area(&self) -> f64 {
        self.dx * self.dy
    }

    /// Length of the edge on `side`.
    pub fn edge_length(&self, side: Side) -> f64 {
        match side {
            Side::Left | Side::Right => self.dy,
            Side::Bottom | Side::Top => self.dx,
        }
    }

    /// Neighbouring cell across `side`, `None` at a non-periodic boundary.
    pub fn neighbor(&self, cell: usize, side: Side, bc: &Boundaries) -> Option<usize> {
        let (i, j) = self.ij(cell);
        let periodic = bc.get(side) == BoundaryKind::Periodic;
        let (ni, nj) = match side {
            Side::Left if i > 0 => (i - 1, j),
            Side::Left if periodic => (self.nx - 1, j),
            Side::Right if i + 1 < self.nx => (i + 1, j),
            Side::Right if periodic => (0, j),
            Side::Bottom if j > 0 => (i, j - 1),
            Side::Bottom if periodic => (i, self.ny - 1),
            Side::Top if j + 1 < self.ny => (i, j + 1),
            Side::Top if periodic => (i, 0),
            _ => return None,
        };
        Some(self.index(ni, nj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{AdvectionCoeff, Model};

    fn euler() -> Model {
        Model::Euler1D { gamma: 1.4 }
    }

    #[test]
    fn free_ghost_copies_trace() {
        let u = [1.0, 0.5, 2.0, 0.0];
        let g = ghost_state(BoundaryKind::Free, [1.0, 0.0], &u, None, &euler()).unwrap();
        assert_eq!(g, u);
    }

    #[test]
    fn reflective_ghost_flips_momentum() {
        let u = [1.0, 0.5, 2.0, 0.0];
        let g = ghost_state(BoundaryKind::Reflective, [-1.0, 0.0], &u, None, &euler()).unwrap();
        assert_eq!(g, [1.0, -0.5, 2.0, 0.0]);
    }

    #[test]
    fn reflective_ghost_2d_flips_normal_component_only() {
        let m = Model::Euler2D { gamma: 1.4 };
        let u = [1.0, 0.5, 0.3, 2.0];
        let g = reflect(&u, [0.0, 1.0], &m).unwrap();
        assert_eq!(g, [1.0, 0.5, -0.3, 2.0]);
    }

    #[test]
    fn periodic_wrap_1d() {
        let m = Mesh1D::new(0.0, 1.0, 4).unwrap();
        let bc = Boundaries::uniform(BoundaryKind::Periodic);
        assert_eq!(m.neighbor(3, Side::Right, &bc), Some(0));
        assert_eq!(m.neighbor(0, Side::Left, &bc), Some(3));
        let free = Boundaries::uniform(BoundaryKind::Free);
        assert_eq!(m.neighbor(3, Side::Right, &free), None);
    }

    #[test]
    fn periodic_ghost_uses_wrapped_trace() {
        let wrapped = [0.7, 0.0, 0.0, 0.0];
        let g = ghost_state(
            BoundaryKind::Periodic,
            [1.0, 0.0],
            &[0.1, 0.0, 0.0, 0.0],
            Some(&wrapped),
            &Model::Burgers1D,
        )
        .unwrap();
        assert_eq!(g, wrapped);
    }

    #[test]
    fn scalar_wall_is_rejected() {
        let m = Model::Advection1D(AdvectionCoeff::Constant(1.0));
        let bc = Boundaries::uniform(BoundaryKind::Reflective);
        assert!(bc.validate(&m).is_err());
        assert!(reflect(&[1.0, 0.0, 0.0, 0.0], [1.0, 0.0], &m).is_err());
    }

    #[test]
    fn one_sided_periodic_is_rejected() {
        let bc = Boundaries {
            left: BoundaryKind::Periodic,
            right: BoundaryKind::Free,
            bottom: BoundaryKind::Free,
            top: BoundaryKind::Free,
        };
        assert!(bc.validate(&Model::Burgers1D).is_err());
    }

    #[test]
    fn mesh_2d_topology() {
        let m = Mesh2D::new([0.0, 1.0], [0.0, 2.0], 3, 4).unwrap();
        let bc = Boundaries::uniform(BoundaryKind::Periodic);
        let c = m.index(0, 0);
        assert_eq!(m.neighbor(c, Side::Left, &bc), Some(m.index(2, 0)));
        assert_eq!(m.neighbor(c, Side::Bottom, &bc), Some(m.index(0, 3)));
        assert_eq!(m.neighbor(c, Side::Top, &bc), Some(m.index(0, 1)));
        for s in Side::ALL {
            let n = s.normal();
            assert!((n[0] * n[0] + n[1] * n[1] - 1.0).abs() < 1e-15);
            let o = s.opposite().normal();
            assert_eq!([n[0] + o[0], n[1] + o[1]], [0.0, 0.0]);
        }
        assert!((m.dx - 1.0 / 3.0).abs() < 1e-15 && (m.dy - 0.5).abs() < 1e-15);
    }
}
