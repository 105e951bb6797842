//! Normalization of the singular-integral kernel.
//!
//! `c_λ` is fixed so that the operator matches the Fourier symbol `-|ξ|^λ`,
//! i.e. `c_λ ∫ (1 - cos(ξ z)) |z|^{-1-λ} dz = |ξ|^λ`. In one dimension
//!
//! ```text
//!     c_λ = λ 2^{λ-1} Γ((1+λ)/2) / (√π Γ(1 - λ/2)).
//! ```

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Kernel normalization matching the symbol `-|ξ|^λ`; valid for `λ ∈ (0,1)`.
pub fn normalization_c_lambda(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must lie in (0, 1), got {lambda}"
        )));
    }
    Ok(lambda * (lambda - 1.0).exp2() * libm::tgamma(0.5 * (1.0 + lambda))
        / (PI.sqrt() * libm::tgamma(1.0 - 0.5 * lambda)))
}

/// `d_λ = c_λ (∫_{|z|<1} |z|^{-λ} dz + ∫_{|z|>1} |z|^{-1-λ} dz)
///      = c_λ (2/(1-λ) + 2/λ)`;
/// the diagonal stencil weight is `-d_λ Δx^{1-λ}`.
pub fn d_lambda(lambda: f64, c_lambda: f64) -> f64 {
    c_lambda * (2.0 / (1.0 - lambda) + 2.0 / lambda)
}
