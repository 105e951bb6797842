//! Shared oracles for the integration suites: brute-force quadrature
//! evaluations of the nonlocal coupling integrals, independent of the
//! closed-form / series construction paths in the library.
#![allow(dead_code)] // each test binary uses its own subset of the oracles

use fraclaw_core::quadrature::tanh_sinh;

/// Legendre polynomial on the reference element (plain evaluation).
pub fn legendre(p: usize, xi: f64) -> f64 {
    match p {
        0 => 1.0,
        1 => xi,
        2 => 1.5 * xi * xi - 0.5,
        _ => unreachable!(),
    }
}

fn legendre_deriv1(p: usize, xi: f64) -> f64 {
    match p {
        0 => 0.0,
        1 => 1.0,
        2 => 3.0 * xi,
        _ => unreachable!(),
    }
}

fn legendre_deriv2(p: usize) -> f64 {
    if p == 2 {
        3.0
    } else {
        0.0
    }
}

/// Off-diagonal stencil weight by nested tanh-sinh quadrature of the raw
/// kernel: `G_m = c_λ ∬_{I_0 × I_m} |y - x|^{-1-λ} dy dx`, `m ≥ 1`.
pub fn oracle_offdiag(lambda: f64, c_lambda: f64, dx: f64, m: usize) -> f64 {
    let (a, b) = (m as f64 * dx, (m + 1) as f64 * dx);
    let (outer, _) = tanh_sinh(
        |x, _x_from_0, x_to_dx| {
            // inner integral over y ∈ I_m; singular only at y -> x, which
            // can occur at the shared corner when m = 1
            let (inner, _) = tanh_sinh(
                |_y, y_from_a, _y_to_b| {
                    // y - x = (y - a) + (a - x); for m = 1, a - x = dx - x
                    let gap = if m == 1 { x_to_dx } else { a - x };
                    (y_from_a + gap).powf(-1.0 - lambda)
                },
                a,
                b,
                1e-12,
            );
            inner
        },
        0.0,
        dx,
        1e-12,
    );
    c_lambda * outer
}

/// Diagonal stencil weight by quadrature of the defining integral:
/// `G_0 = -(c_λ/λ) ∫_0^{dx} (x^{-λ} + (dx - x)^{-λ}) dx`.
pub fn oracle_diag(lambda: f64, c_lambda: f64, dx: f64) -> f64 {
    let (v, _) = tanh_sinh(
        |_x, from_left, to_right| from_left.powf(-lambda) + to_right.powf(-lambda),
        0.0,
        dx,
        1e-13,
    );
    -c_lambda / lambda * v
}

/// Pointwise `g[φ_{p,m}](x)` for `x` inside cell 0, by quadrature. The
/// stable distances of `x` to the cell ends are passed in; the polynomial
/// difference in the singular integral is expanded through exact Taylor
/// increments so nothing cancels near `y = x`.
fn oracle_g_of_basis(
    lambda: f64,
    c_lambda: f64,
    dx: f64,
    m: i64,
    p: usize,
    x: f64,
    x_from_0: f64,
    x_to_dx: f64,
) -> f64 {
    let cell_ref = |y: f64, cell: i64| 2.0 * (y - cell as f64 * dx) / dx - 1.0;
    if m != 0 {
        // φ vanishes on cell 0, so g[φ](x) = c_λ ∫_{I_m} φ(y) |y-x|^{-1-λ} dy
        let (a, b) = (m as f64 * dx, (m + 1) as f64 * dx);
        let (inner, _) = tanh_sinh(
            |y, y_from_a, y_to_b| {
                let dist = if m > 0 {
                    // y - x = (y - a) + (m-1) dx + (dx - x)
                    y_from_a + (m - 1) as f64 * dx + x_to_dx
                } else {
                    // x - y = (b - y) + (-m-1) dx + x
                    y_to_b + (-m - 1) as f64 * dx + x_from_0
                };
                legendre(p, cell_ref(y, m)) * dist.powf(-1.0 - lambda)
            },
            a,
            b,
            1e-12,
        );
        return c_lambda * inner;
    }
    // self cell: difference form plus the exterior contribution
    let xi = cell_ref(x, 0);
    let phi_x = legendre(p, xi);
    let d1 = legendre_deriv1(p, xi) * 2.0 / dx;
    let d2 = legendre_deriv2(p) * (2.0 / dx) * (2.0 / dx);
    let taylor_diff = |h: f64| d1 * h + 0.5 * d2 * h * h; // exact for deg ≤ 2
    let mut total = 0.0;
    let (left, _) = tanh_sinh(
        |_y, _y_from_0, y_to_x| taylor_diff(-y_to_x) * y_to_x.powf(-1.0 - lambda),
        0.0,
        x,
        1e-12,
    );
    total += left;
    let (right, _) = tanh_sinh(
        |_y, y_from_x, _y_to_dx| taylor_diff(y_from_x) * y_from_x.powf(-1.0 - lambda),
        x,
        dx,
        1e-12,
    );
    total += right;
    total -= phi_x * (x_from_0.powf(-lambda) + x_to_dx.powf(-lambda)) / lambda;
    c_lambda * total
}

/// DG coupling weight `W_m[q][p] = ∫_{I_0} φ_q g[φ_{p,m}]` by nested
/// quadrature of the defining integrals.
pub fn oracle_dg_weight(lambda: f64, c_lambda: f64, dx: f64, m: i64, q: usize, p: usize) -> f64 {
    let (outer, _) = tanh_sinh(
        |x, da, db| {
            legendre(q, 2.0 * x / dx - 1.0)
                * oracle_g_of_basis(lambda, c_lambda, dx, m, p, x, da, db)
        },
        0.0,
        dx,
        1e-10,
    );
    outer
}
