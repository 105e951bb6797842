use crate::error::{Error, Result};

/// Uniform one-dimensional grid. Cell `i` spans
/// `[x_left + i·dx, x_left + (i+1)·dx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub dx: f64,
}

impl GridSpec {
    pub fn new(x_left: f64, x_right: f64, n_cells: usize) -> Result<Self> {
        if !(x_left.is_finite() && x_right.is_finite()) || x_right <= x_left {
            return Err(Error::InvalidParameter(format!(
                "domain bounds must be finite with x_left < x_right, got [{x_left}, {x_right}]"
            )));
        }
        if n_cells == 0 {
            return Err(Error::InvalidParameter("n_cells must be positive".into()));
        }
        let dx = (x_right - x_left) / n_cells as f64;
        Ok(Self { x_left, x_right, n_cells, dx })
    }

    /// Symmetric grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n_cells: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n_cells)
    }

    #[inline]
    pub fn cell_left(&self, i: usize) -> f64 {
        self.x_left + i as f64 * self.dx
    }

    #[inline]
    pub fn cell_right(&self, i: usize) -> f64 {
        self.x_left + (i + 1) as f64 * self.dx
    }

    #[inline]
    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_left + (i as f64 + 0.5) * self.dx
    }

    /// Index of the cell containing `x`. The right domain endpoint maps to
    /// the last cell.
    pub fn cell_of(&self, x: f64) -> Result<usize> {
        if !x.is_finite() || x < self.x_left || x > self.x_right {
            return Err(Error::OutOfDomain { x, left: self.x_left, right: self.x_right });
        }
        let i = ((x - self.x_left) / self.dx) as usize;
        Ok(i.min(self.n_cells - 1))
    }

    /// Maps `x` inside cell `i` to the reference coordinate `ξ ∈ [-1, 1]`.
    #[inline]
    pub fn to_reference(&self, i: usize, x: f64) -> f64 {
        2.0 * (x - self.cell_left(i)) / self.dx - 1.0
    }

    /// Maps a reference coordinate `ξ ∈ [-1, 1]` to `x` inside cell `i`.
    #[inline]
    pub fn from_reference(&self, i: usize, xi: f64) -> f64 {
        self.cell_left(i) + 0.5 * (xi + 1.0) * self.dx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_and_coordinate_maps_are_inverse() {
        let g = GridSpec::new(-1.5, 1.5, 7).unwrap();
        assert!(g.dx > 0.0);
        for i in 0..g.n_cells {
            let x = g.cell_center(i);
            assert_eq!(g.cell_of(x).unwrap(), i);
            let xi = g.to_reference(i, x);
            assert!((xi).abs() < 1e-12);
            assert!((g.from_reference(i, xi) - x).abs() < 1e-12);
        }
    }

    #[test]
    fn cell_of_rejects_outside_points() {
        let g = GridSpec::new(0.0, 1.0, 4).unwrap();
        assert!(g.cell_of(-0.01).is_err());
        assert!(g.cell_of(1.01).is_err());
        assert_eq!(g.cell_of(1.0).unwrap(), 3);
    }

    #[test]
    fn degenerate_grids_rejected() {
        assert!(GridSpec::new(1.0, 1.0, 4).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0).is_err());
        assert!(GridSpec::new(f64::NAN, 1.0, 4).is_err());
    }
}
