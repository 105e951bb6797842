//! Legendre basis on the reference element `[-1, 1]`.
//!
//! Cells map affinely to the reference element; the basis function of degree
//! `p` on cell `i` is `φ_{p,i}(x) = P_p(ξ(x))`. The basis satisfies
//! `∫ φ_p φ_q dx = Δx/(2q+1) δ_pq`, `φ_p(+1) = 1` and `φ_p(-1) = (-1)^p`.

use crate::error::{Error, Result};

/// Highest element degree supported by the solvers.
pub const MAX_DEGREE: usize = 2;

/// Legendre polynomial of degree `p ∈ {0, 1, 2}` at `ξ ∈ [-1, 1]`.
pub fn legendre_eval(p: usize, xi: f64) -> Result<f64> {
    match p {
        0 => Ok(1.0),
        1 => Ok(xi),
        2 => Ok(1.5 * xi * xi - 0.5),
        _ => Err(Error::InvalidParameter(format!(
            "basis degree {p} out of supported range 0..={MAX_DEGREE}"
        ))),
    }
}

/// Derivative `P_p'(ξ)` for `p ∈ {0, 1, 2}`.
pub fn legendre_deriv(p: usize, xi: f64) -> Result<f64> {
    match p {
        0 => Ok(0.0),
        1 => Ok(1.0),
        2 => Ok(3.0 * xi),
        _ => Err(Error::InvalidParameter(format!(
            "basis degree {p} out of supported range 0..={MAX_DEGREE}"
        ))),
    }
}

/// `P_p(ξ)` without degree checking, for hot loops. Panics above degree 2.
#[inline]
pub(crate) fn legendre(p: usize, xi: f64) -> f64 {
    match p {
        0 => 1.0,
        1 => xi,
        2 => 1.5 * xi * xi - 0.5,
        _ => unreachable!("degree capped at {MAX_DEGREE}"),
    }
}

/// Endpoint value `φ_p(-1) = (-1)^p`.
#[inline]
pub(crate) fn sign_at_left(p: usize) -> f64 {
    if p % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
