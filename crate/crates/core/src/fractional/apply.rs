//! Application of the discrete fractional Laplacian: dense `O(N·M)` loops
//! and FFT-based circulant paths that agree to round-off.
//!
//! Zero extension embeds the `n×n` Toeplitz block into a `2n` circulant;
//! periodic wrap uses the exact folded circulant of size `n`.

use super::fold;
use super::stencil::FracStencil;
use crate::boundary::BoundaryMode;
use crate::error::{Error, Result};
use crate::fractional::dg_weights::DgWeightTable;
use crate::state::PolyState;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// FFT plans and scratch sizing for circulant products of one length.
pub(crate) struct Convolver {
    n: usize,
    len: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Convolver {
    pub(crate) fn new(n: usize, mode: BoundaryMode) -> Self {
        let len = match mode {
            BoundaryMode::ZeroExtension => 2 * n,
            BoundaryMode::Periodic => n,
        };
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(len);
        let inv = planner.plan_fft_inverse(len);
        Self { n, len, fwd, inv }
    }

    /// Spectrum of the circulant whose action is
    /// `out_i = Σ_j t_{i-j} u_j`, from the kernel values `t_m`
    /// (`kernel(m)` for `m ∈ -(n-1)..=n-1`, plus `t_n` used only as circulant
    /// padding in the zero-extension embedding).
    pub(crate) fn kernel_spectrum<K: Fn(isize) -> f64>(
        &self,
        mode: BoundaryMode,
        kernel: K,
    ) -> Vec<Complex<f64>> {
        let n = self.n as isize;
        let mut col = vec![Complex::new(0.0, 0.0); self.len];
        match mode {
            BoundaryMode::ZeroExtension => {
                for m in 0..n {
                    col[m as usize].re = kernel(m);
                }
                col[n as usize].re = kernel(n);
                for m in 1..n {
                    col[(2 * n - m) as usize].re = kernel(-m);
                }
            }
            BoundaryMode::Periodic => {
                // kernel already folded: t_d for d = 0..n-1
                for d in 0..n {
                    col[d as usize].re = kernel(d);
                }
            }
        }
        self.fwd.process(&mut col);
        col
    }

    /// Circulant product of a stored spectrum with `u`.
    pub(crate) fn convolve(&self, spectrum: &[Complex<f64>], u: &[f64]) -> Vec<f64> {
        debug_assert_eq!(u.len(), self.n);
        let mut buf = vec![Complex::new(0.0, 0.0); self.len];
        for (b, &v) in buf.iter_mut().zip(u.iter()) {
            b.re = v;
        }
        self.fwd.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(spectrum.iter()) {
            *b *= s;
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        buf[..self.n].iter().map(|c| c.re * scale).collect()
    }
}

/// The cell-averaged discrete fractional Laplacian
/// `g⟨U⟩_i = (1/Δx) Σ_j G_{i-j} U_j` with the chosen boundary treatment.
pub struct ToeplitzOperator {
    pub n: usize,
    pub dx: f64,
    pub mode: BoundaryMode,
    /// Diagonal entry of the scaled operator, `G_0/Δx` (or its folded
    /// periodic counterpart); used by the implicit solver.
    pub diag: f64,
    /// Scaled kernel by absolute offset (zero extension) or folded circulant
    /// weights (periodic).
    weights: Vec<f64>,
    conv: Convolver,
    spectrum: Vec<Complex<f64>>,
}

impl ToeplitzOperator {
    pub fn new(stencil: &FracStencil, n: usize, mode: BoundaryMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("operator needs at least one cell".into()));
        }
        let inv_dx = 1.0 / stencil.dx;
        let weights: Vec<f64> = match mode {
            BoundaryMode::ZeroExtension => {
                (0..=n).map(|m| stencil.weight(m as isize) * inv_dx).collect()
            }
            BoundaryMode::Periodic => fold::periodic_fold_scalar(stencil, n)
                .into_iter()
                .map(|g| g * inv_dx)
                .collect(),
        };
        let conv = Convolver::new(n, mode);
        let spectrum = match mode {
            BoundaryMode::ZeroExtension => {
                conv.kernel_spectrum(mode, |m| weights[m.unsigned_abs()])
            }
            BoundaryMode::Periodic => conv.kernel_spectrum(mode, |d| weights[d as usize]),
        };
        let diag = weights[0];
        Ok(Self { n, dx: stencil.dx, mode, diag, weights, conv, spectrum })
    }

    fn check_len(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, actual: u.len() });
        }
        if let Some(bad) = u.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { time: f64::NAN, cell: bad, value: u[bad] });
        }
        Ok(())
    }

    /// FFT path (the default).
    pub fn apply(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.check_len(u)?;
        Ok(self.conv.convolve(&self.spectrum, u))
    }

    /// Direct `O(N·M)` evaluation; reference path for verification.
    pub fn apply_dense(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.check_len(u)?;
        let n = self.n as isize;
        let mut out = vec![0.0; self.n];
        match self.mode {
            BoundaryMode::ZeroExtension => {
                for i in 0..n {
                    let mut acc = 0.0;
                    for j in 0..n {
                        let m = (i - j).unsigned_abs();
                        if m < self.weights.len() {
                            acc += self.weights[m] * u[j as usize];
                        }
                    }
                    out[i as usize] = acc;
                }
            }
            BoundaryMode::Periodic => {
                for i in 0..n {
                    let mut acc = 0.0;
                    for j in 0..n {
                        let d = (i - j).rem_euclid(n) as usize;
                        acc += self.weights[d] * u[j as usize];
                    }
                    out[i as usize] = acc;
                }
            }
        }
        Ok(out)
    }
}

/// Nonlocal term of the DG right-hand side for degree `k ≥ 1` elements:
/// `N_{q,i} = Σ_m Σ_p W_m[q][p] U_{p,i+m}`.
pub struct DgNonlocalOperator {
    pub k: usize,
    pub n: usize,
    pub mode: BoundaryMode,
    conv: Convolver,
    /// spectrum per (q, p)
    spectra: Vec<Vec<Complex<f64>>>,
    /// folded circulant blocks (periodic mode), `[d][q][p]` flattened
    folded: Option<Vec<f64>>,
    table: DgWeightTable,
}

impl DgNonlocalOperator {
    pub fn new(table: DgWeightTable, n: usize, mode: BoundaryMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("operator needs at least one cell".into()));
        }
        let k = table.k;
        let kk = k + 1;
        let bs = kk * kk;
        let conv = Convolver::new(n, mode);
        let folded = match mode {
            BoundaryMode::Periodic => Some(fold::periodic_fold_block(&table, n)),
            BoundaryMode::ZeroExtension => None,
        };
        let mut spectra = Vec::with_capacity(bs);
        for q in 0..kk {
            for p in 0..kk {
                // out_{q,i} = Σ_j W_{j-i}[q][p] U_{p,j}: Toeplitz kernel
                // t_m = W_{-m}[q][p].
                let spec = match mode {
                    BoundaryMode::ZeroExtension => {
                        conv.kernel_spectrum(mode, |m| table.weight(-m, q, p))
                    }
                    BoundaryMode::Periodic => {
                        let cw = folded.as_ref().unwrap();
                        conv.kernel_spectrum(mode, |d| {
                            let src = (n as isize - d) as usize % n;
                            cw[src * bs + q * kk + p]
                        })
                    }
                };
                spectra.push(spec);
            }
        }
        Ok(Self { k, n, mode, conv, spectra, folded, table })
    }

    /// Applies the nonlocal coupling to all coefficient rows of `state`,
    /// returning one output row per test degree `q`.
    pub fn apply_state(&self, state: &PolyState) -> Result<Vec<Vec<f64>>> {
        if state.n_cells() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, actual: state.n_cells() });
        }
        if state.degree != self.k {
            return Err(Error::MissingWeightTable(state.degree));
        }
        let kk = self.k + 1;
        let mut out = vec![vec![0.0; self.n]; kk];
        for p in 0..kk {
            let row = state.row(p);
            for (q, out_q) in out.iter_mut().enumerate() {
                let contrib = self.conv.convolve(&self.spectra[q * kk + p], row);
                for (o, c) in out_q.iter_mut().zip(contrib) {
                    *o += c;
                }
            }
        }
        Ok(out)
    }

    /// Direct evaluation of the defining sums; reference path.
    pub fn apply_state_dense(&self, state: &PolyState) -> Result<Vec<Vec<f64>>> {
        if state.n_cells() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, actual: state.n_cells() });
        }
        let kk = self.k + 1;
        let n = self.n as isize;
        let mut out = vec![vec![0.0; self.n]; kk];
        match self.mode {
            BoundaryMode::ZeroExtension => {
                for q in 0..kk {
                    for i in 0..n {
                        let mut acc = 0.0;
                        for j in 0..n {
                            let m = j - i;
                            for p in 0..kk {
                                acc += self.table.weight(m, q, p) * state.row(p)[j as usize];
                            }
                        }
                        out[q][i as usize] = acc;
                    }
                }
            }
            BoundaryMode::Periodic => {
                let bs = kk * kk;
                let cw = self.folded.as_ref().unwrap();
                for q in 0..kk {
                    for i in 0..n {
                        let mut acc = 0.0;
                        for j in 0..n {
                            let d = (j - i).rem_euclid(n) as usize;
                            for p in 0..kk {
                                acc += cw[d * bs + q * kk + p] * state.row(p)[j as usize];
                            }
                        }
                        out[q][i as usize] = acc;
                    }
                }
            }
        }
        Ok(out)
    }
}
