//! Modal coefficient storage for a DG solution.

/// Modal coefficients `α[cell][component][mode]` stored contiguously.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    /// Number of cells.
    pub n_cells: usize,
    /// Number of solution components.
    pub n_comp: usize,
    /// Number of basis modes per component.
    pub n_modes: usize,
    /// Flat coefficient array in `[cell][component][mode]` order.
    pub data: Vec<f64>,
    /// Time stamp of the field.
    pub time: f64,
}

impl Field {
    /// Zero field of the given shape.
    pub fn zeros(n_cells: usize, n_comp: usize, n_modes: usize) -> Self {
        Self {
            n_cells,
            n_comp,
            n_modes,
            data: vec![0.0; n_cells * n_comp * n_modes],
            time: 0.0,
        }
    }

    /// Number of coefficients stored per cell.
    pub fn cell_len(&self) -> usize {
        self.n_comp * self.n_modes
    }

    /// Offset of `(cell, comp, 0)` in [`Field::data`].
    pub fn offset(&self, cell: usize, comp: usize) -> usize {
        (cell * self.n_comp + comp) * self.n_modes
    }

    /// Coefficients of one component in one cell.
    pub fn coeffs(&self, cell: usize, comp: usize) -> &[f64] {
        let o = self.offset(cell, comp);
        &self.data[o..o + self.n_modes]
    }

    /// Mutable coefficients of one component in one cell.
    pub fn coeffs_mut(&mut self, cell: usize, comp: usize) -> &mut [f64] {
        let o = self.offset(cell, comp);
        &mut self.data[o..o + self.n_modes]
    }

    /// All coefficients of one cell (`n_comp × n_modes`, component-major).
    pub fn cell(&self, cell: usize) -> &[f64] {
        let n = self.cell_len();
        &self.data[cell * n..(cell + 1) * n]
    }

    /// Whether every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}
