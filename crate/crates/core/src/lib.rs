//! Solver library for one-dimensional fractal conservation laws
//!
//! ```text
//!     ∂t u + ∂x f(u) = g_λ[u],      λ ∈ (0,1),
//! ```
//!
//! where `g_λ = -(-∂xx)^{λ/2}` is the fractional Laplacian, defined by the
//! Fourier symbol `-|ξ|^λ` or equivalently by the singular integral
//! `c_λ ∫ (u(x+z) - u(x)) |z|^{-1-λ} dz`.
//!
//! The crate provides:
//!
//! * a uniform grid with a Legendre element basis, L² projection and TVB
//!   slope limiting ([`grid`], [`basis`], [`state`], [`project`], [`limiter`]);
//! * the discrete fractional Laplacian: closed-form Toeplitz weights for
//!   piecewise constants, weight tables for higher-degree elements, dense and
//!   FFT-based application, and the implicit-step solve
//!   ([`fractional`]);
//! * monotone two-point numerical fluxes with their Lipschitz constants
//!   ([`flux`]);
//! * fully discrete time marching: explicit and implicit-explicit
//!   finite-volume schemes, the discontinuous Galerkin right-hand side and an
//!   SSP-RK3 driver with CFL step selection ([`scheme`]);
//! * independent references: a spectral solver for the linear equation and
//!   fine-grid self-reference ([`mod@reference`]);
//! * exact norms of piecewise-polynomial states and convergence-table
//!   machinery for grid refinement studies ([`norms`], [`table`]).

pub mod basis;
pub mod boundary;
pub mod error;
pub mod flux;
pub mod fractional;
pub mod grid;
pub mod limiter;
pub mod norms;
pub mod presets;
pub mod project;
pub mod quadrature;
pub mod reference;
pub mod scheme;
pub mod state;
pub mod table;

pub(crate) mod poly;

pub use boundary::BoundaryMode;
pub use error::{Error, Result};
pub use flux::{FluxKind, FluxSpec, PhysicalFlux};
pub use fractional::{
    apply::ToeplitzOperator, dg_weights::DgWeightTable, implicit::solve_implicit,
    stencil::FracStencil,
};
pub use grid::GridSpec;
pub use presets::InitialData;
pub use scheme::{SchemeConfig, SchemeKind, Solver, Trajectory};
pub use state::PolyState;
pub use table::ErrorTable;
