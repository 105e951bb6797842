//! The discrete fractional Laplacian.
//!
//! The operator `g_λ[u](x) = c_λ ∫ (u(x+z) - u(x)) |z|^{-1-λ} dz` is
//! discretized against the broken Legendre basis. For piecewise constants
//! the coupling integrals `G_m = ∫_{I_0} g[1_{I_m}]` form a symmetric
//! Toeplitz stencil with closed-form entries; for degree 1 and 2 elements
//! the couplings `W_m[q][p] = ∫_{I_0} φ_q g[φ_{p,m}]` are assembled from
//! exact antiderivatives near the singular self-cell and a multipole series
//! in the far field.

pub mod apply;
pub mod dg_weights;
pub mod implicit;
pub mod normalization;
pub mod stencil;

pub(crate) mod fold;
pub(crate) mod special;
