use crate::basis;
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Discrete solution at one time: the coefficient array `U_{p,i}` of the
/// expansion `ũ(x) = Σ_i Σ_p U_{p,i} φ_{p,i}(x)` over Legendre basis
/// functions on each cell.
///
/// Coefficients are stored degree-major (`coeffs[p * n_cells + i]`) so that
/// each degree row is contiguous for the Toeplitz products. Row `0` holds the
/// cell averages.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyState {
    pub degree: usize,
    pub grid: GridSpec,
    coeffs: Vec<f64>,
}

impl PolyState {
    pub fn zeros(grid: GridSpec, degree: usize) -> Result<Self> {
        if degree > basis::MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "degree {degree} exceeds supported maximum {}",
                basis::MAX_DEGREE
            )));
        }
        let coeffs = vec![0.0; (degree + 1) * grid.n_cells];
        Ok(Self { degree, grid, coeffs })
    }

    /// Degree-0 state from cell averages.
    pub fn from_averages(grid: GridSpec, averages: Vec<f64>) -> Result<Self> {
        if averages.len() != grid.n_cells {
            return Err(Error::SizeMismatch { expected: grid.n_cells, actual: averages.len() });
        }
        Ok(Self { degree: 0, grid, coeffs: averages })
    }

    #[inline]
    pub fn n_cells(&self) -> usize {
        self.grid.n_cells
    }

    #[inline]
    pub fn coeff(&self, p: usize, i: usize) -> f64 {
        self.coeffs[p * self.grid.n_cells + i]
    }

    #[inline]
    pub fn coeff_mut(&mut self, p: usize, i: usize) -> &mut f64 {
        &mut self.coeffs[p * self.grid.n_cells + i]
    }

    /// Contiguous coefficients of one degree across all cells.
    #[inline]
    pub fn row(&self, p: usize) -> &[f64] {
        let n = self.grid.n_cells;
        &self.coeffs[p * n..(p + 1) * n]
    }

    #[inline]
    pub fn row_mut(&mut self, p: usize) -> &mut [f64] {
        let n = self.grid.n_cells;
        &mut self.coeffs[p * n..(p + 1) * n]
    }

    /// Cell averages (the degree-0 row).
    #[inline]
    pub fn averages(&self) -> &[f64] {
        self.row(0)
    }

    /// Evaluates the cell polynomial at reference coordinate `ξ ∈ [-1, 1]`.
    #[inline]
    pub fn eval_in_cell(&self, i: usize, xi: f64) -> f64 {
        let mut v = 0.0;
        for p in 0..=self.degree {
            v += self.coeff(p, i) * basis::legendre(p, xi);
        }
        v
    }

    /// Evaluates the expansion at `x`, using the polynomial of the containing
    /// cell. One-sided interface limits are obtained by evaluating the
    /// adjacent cell's polynomial via [`Self::trace_right`] /
    /// [`Self::trace_left`].
    pub fn reconstruct(&self, x: f64) -> Result<f64> {
        let i = self.grid.cell_of(x)?;
        Ok(self.eval_in_cell(i, self.grid.to_reference(i, x)))
    }

    /// `ũ(x_{i+1}^-)`: value at the right end of cell `i`, where every basis
    /// function equals one.
    #[inline]
    pub fn trace_right(&self, i: usize) -> f64 {
        (0..=self.degree).map(|p| self.coeff(p, i)).sum()
    }

    /// `ũ(x_i^+)`: value at the left end of cell `i`, where `φ_p = (-1)^p`.
    #[inline]
    pub fn trace_left(&self, i: usize) -> f64 {
        (0..=self.degree).map(|p| self.coeff(p, i) * basis::sign_at_left(p)).sum()
    }

    /// Discrete L² norm of the reconstruction, exact by orthogonality:
    /// `‖ũ‖² = Σ_i Σ_p Δx/(2p+1) U_{p,i}²`.
    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        for p in 0..=self.degree {
            let coef = self.grid.dx / (2.0 * p as f64 + 1.0);
            acc += coef * self.row(p).iter().map(|u| u * u).sum::<f64>();
        }
        acc.sqrt()
    }

    /// Index and value of the first non-finite coefficient, if any.
    pub fn find_non_finite(&self) -> Option<(usize, f64)> {
        let n = self.grid.n_cells;
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite())
            .map(|(idx, &v)| (idx % n, v))
    }

    /// Linear combination `a·self + b·other` (same grid and degree).
    pub fn lin_comb(&self, a: f64, other: &PolyState, b: f64) -> PolyState {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| a * x + b * y).collect();
        PolyState { degree: self.degree, grid: self.grid.clone(), coeffs }
    }
}
