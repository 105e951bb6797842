//! Closed-form Toeplitz weights of the piecewise-constant discretization.
//!
//! With `G_m = ∫_{I_0} g[1_{I_m}] dx` and `κ = c_λ Δx^{1-λ}/(λ(1-λ))`:
//!
//! * diagonal `G_0 = -d_λ Δx^{1-λ}`,
//! * off-diagonal `G_m = κ (2 m^{1-λ} - (m-1)^{1-λ} - (m+1)^{1-λ}) > 0`,
//! * the full row sums to zero, with the analytic tail
//!   `Σ_{m>M} G_m = κ ((M+1)^{1-λ} - M^{1-λ})`.
//!
//! The weights depend only on `|i - j|`, are symmetric, positive off the
//! diagonal and decay like `c_λ Δx^{1-λ} m^{-1-λ}`.

use super::normalization::{d_lambda, normalization_c_lambda};
use super::special::{central_second_diff, forward_diff_pow};
use crate::error::{Error, Result};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// Truncated stencil of the discrete fractional Laplacian.
#[derive(Debug, Clone)]
pub struct FracStencil {
    pub lambda: f64,
    pub c_lambda: f64,
    pub dx: f64,
    /// Diagonal weight `G_0 = -d_λ Δx^{1-λ}`.
    pub g0: f64,
    /// Off-diagonal weights `G_m`, `m = 1..=m_trunc`.
    pub g_tail: Vec<f64>,
    pub m_trunc: usize,
}

/// Off-diagonal weight `G_m`, `m ≥ 1`, from the exact double integral of the
/// kernel (second antiderivative of `|z|^{-1-λ}`).
pub fn weight_offdiag(lambda: f64, c_lambda: f64, dx: f64, m: usize) -> f64 {
    debug_assert!(m >= 1);
    let kappa = c_lambda * dx.powf(1.0 - lambda) / (lambda * (1.0 - lambda));
    -kappa * central_second_diff(m as f64, 1.0 - lambda)
}

impl FracStencil {
    /// Builds the stencil truncated at offset `m_trunc ≥ 1`.
    pub fn build(lambda: f64, dx: f64, m_trunc: usize) -> Result<Self> {
        if m_trunc == 0 {
            return Err(Error::InvalidParameter("m_trunc must be at least 1".into()));
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidParameter(format!("dx must be positive, got {dx}")));
        }
        let c_lambda = normalization_c_lambda(lambda)?;
        let g0 = -d_lambda(lambda, c_lambda) * dx.powf(1.0 - lambda);
        let g_tail =
            (1..=m_trunc).map(|m| weight_offdiag(lambda, c_lambda, dx, m)).collect();
        Ok(Self { lambda, c_lambda, dx, g0, g_tail, m_trunc })
    }

    /// Weight at signed offset `m`; zero beyond the truncation radius.
    #[inline]
    pub fn weight(&self, m: isize) -> f64 {
        let a = m.unsigned_abs();
        if a == 0 {
            self.g0
        } else if a <= self.m_trunc {
            self.g_tail[a - 1]
        } else {
            0.0
        }
    }

    /// Analytic remainder `Σ_{j>m} G_j` of the one-sided weight sum
    /// (telescoping closed form).
    pub fn tail_sum(&self, m: usize) -> f64 {
        let kappa =
            self.c_lambda * self.dx.powf(1.0 - self.lambda) / (self.lambda * (1.0 - self.lambda));
        kappa * forward_diff_pow(m as f64, 1.0 - self.lambda)
    }

    /// `g0 + 2 Σ_{m≤M} G_m + 2 tail(M)`: zero in exact arithmetic.
    pub fn row_sum_defect(&self) -> f64 {
        let partial: f64 = self.g_tail.iter().sum();
        self.g0 + 2.0 * partial + 2.0 * self.tail_sum(self.m_trunc)
    }

    /// Writes the weight sequence as `m,G_m` CSV lines (m = 0..=m_trunc).
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "m,G_m")?;
        writeln!(out, "0,{}", self.g0)?;
        for (idx, g) in self.g_tail.iter().enumerate() {
            writeln!(out, "{},{}", idx + 1, g)?;
        }
        Ok(())
    }

    pub fn dump_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    /// Reads a `m,G_m` CSV produced by [`Self::write_csv`]; metadata fields
    /// must be supplied by the caller.
    pub fn load_csv<P: AsRef<Path>>(path: P, lambda: f64, dx: f64) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let mut weights = Vec::new();
        for (no, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if no == 0 {
                continue; // header
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.splitn(2, ',');
            let m: usize = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad offset", no + 1)))?;
            let g: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad weight", no + 1)))?;
            if m != weights.len() {
                return Err(Error::Parse(format!("line {}: offsets out of order", no + 1)));
            }
            weights.push(g);
        }
        if weights.is_empty() {
            return Err(Error::Parse("empty stencil file".into()));
        }
        let g0 = weights.remove(0);
        let c_lambda = normalization_c_lambda(lambda)?;
        let m_trunc = weights.len();
        Ok(Self { lambda, c_lambda, dx, g0, g_tail: weights, m_trunc })
    }
}
