//! Exact norms of piecewise-polynomial states and error norms between nested
//! states. All integrals are evaluated exactly for degrees up to 2 (absolute
//! values are split at the polynomial roots).

use crate::error::{Error, Result};
use crate::quadrature::GaussRule;
use crate::state::PolyState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L1,
    L2,
    LInf,
    /// Total variation of the reconstruction: interface jumps plus in-cell
    /// variation. Exterior boundary jumps are not counted.
    Bv,
}

/// Evaluates `a + b ξ + c ξ²` coefficients of cell `i` of a state.
fn cell_monomials(state: &PolyState, i: usize) -> [f64; 3] {
    // P0 = 1, P1 = ξ, P2 = (3ξ² - 1)/2
    let u0 = state.coeff(0, i);
    let u1 = if state.degree >= 1 { state.coeff(1, i) } else { 0.0 };
    let u2 = if state.degree >= 2 { state.coeff(2, i) } else { 0.0 };
    [u0 - 0.5 * u2, u1, 1.5 * u2]
}

/// Roots of `a + b ξ + c ξ²` inside `(-1, 1)`, sorted.
fn quadratic_roots_in_cell(a: f64, b: f64, c: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if c.abs() < 1e-300 {
        if b.abs() > 1e-300 {
            let r = -a / b;
            if r.abs() < 1.0 {
                roots.push(r);
            }
        }
        return roots;
    }
    let disc = b * b - 4.0 * a * c;
    if disc > 0.0 {
        let sq = disc.sqrt();
        // numerically stable pair
        let q = -0.5 * (b + b.signum() * sq);
        let r1 = q / c;
        let r2 = if q.abs() > 1e-300 { a / q } else { f64::INFINITY };
        for r in [r1, r2] {
            if r.is_finite() && r.abs() < 1.0 {
                roots.push(r);
            }
        }
        roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        roots.dedup();
    }
    roots
}

/// `∫_{-1}^{1} |a + bξ + cξ²| dξ`, exact.
fn abs_integral(a: f64, b: f64, c: f64) -> f64 {
    let anti = |x: f64| a * x + 0.5 * b * x * x + c * x * x * x / 3.0;
    let mut cuts = vec![-1.0];
    cuts.extend(quadratic_roots_in_cell(a, b, c));
    cuts.push(1.0);
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        acc += (anti(w[1]) - anti(w[0])).abs();
    }
    acc
}

/// `max_{[-1,1]} |a + bξ + cξ²|`, exact.
fn abs_max(a: f64, b: f64, c: f64) -> f64 {
    let eval = |x: f64| (a + b * x + c * x * x).abs();
    let mut m = eval(-1.0).max(eval(1.0));
    if c.abs() > 1e-300 {
        let crit = -b / (2.0 * c);
        if crit.abs() < 1.0 {
            m = m.max(eval(crit));
        }
    }
    m
}

/// Exact `L^p` norm or total variation of the reconstruction.
pub fn lp_norm(state: &PolyState, kind: NormKind) -> f64 {
    let dx = state.grid.dx;
    let n = state.n_cells();
    match kind {
        NormKind::L1 => {
            let mut acc = 0.0;
            for i in 0..n {
                let [a, b, c] = cell_monomials(state, i);
                acc += abs_integral(a, b, c);
            }
            acc * dx / 2.0
        }
        NormKind::L2 => state.l2_norm(),
        NormKind::LInf => {
            let mut m = 0.0_f64;
            for i in 0..n {
                let [a, b, c] = cell_monomials(state, i);
                m = m.max(abs_max(a, b, c));
            }
            m
        }
        NormKind::Bv => {
            let mut acc = 0.0;
            for i in 1..n {
                acc += (state.trace_left(i) - state.trace_right(i - 1)).abs();
            }
            for i in 0..n {
                let [_, b, c] = cell_monomials(state, i);
                // derivative b + 2cξ is linear: integrate |·| exactly
                acc += abs_integral(b, 2.0 * c, 0.0);
            }
            acc
        }
    }
}

/// Exact `(L1, L2, L∞)` distances between two states over the same domain;
/// the finer grid must refine the coarser.
pub fn error_norms(a: &PolyState, b: &PolyState) -> Result<[f64; 3]> {
    let (coarse, fine) = if a.n_cells() <= b.n_cells() { (a, b) } else { (b, a) };
    let nc = coarse.n_cells();
    let nf = fine.n_cells();
    if nf % nc != 0
        || (coarse.grid.x_left - fine.grid.x_left).abs() > 1e-12
        || (coarse.grid.x_right - fine.grid.x_right).abs() > 1e-12
    {
        return Err(Error::InvalidParameter(
            "error norms need nested grids over the same domain".into(),
        ));
    }
    let ratio = nf / nc;
    let k = coarse.degree.max(fine.degree);
    let rule = GaussRule::new(k + 1);
    let dxf = fine.grid.dx;
    let (mut l1, mut l2, mut linf) = (0.0, 0.0, 0.0_f64);
    for jf in 0..nf {
        let ic = jf / ratio;
        // difference polynomial on the fine reference element, projected
        // exactly onto monomials via its Legendre moments
        let diff = |xi: f64| {
            let x = fine.grid.from_reference(jf, xi);
            fine.eval_in_cell(jf, xi) - coarse.eval_in_cell(ic, coarse.grid.to_reference(ic, x))
        };
        // exact Legendre coefficients of the degree-≤2 difference
        let mut leg = [0.0_f64; 3];
        for (g, &xi) in rule.nodes.iter().enumerate() {
            let w = rule.weights[g];
            let d = diff(xi);
            leg[0] += 0.5 * w * d;
            leg[1] += 1.5 * w * d * xi;
            leg[2] += 2.5 * w * d * (1.5 * xi * xi - 0.5);
        }
        let (a0, a1, a2) = (leg[0] - 0.5 * leg[2], leg[1], 1.5 * leg[2]);
        l1 += abs_integral(a0, a1, a2) * dxf / 2.0;
        l2 += dxf * (leg[0] * leg[0] + leg[1] * leg[1] / 3.0 + leg[2] * leg[2] / 5.0);
        linf = linf.max(abs_max(a0, a1, a2));
    }
    Ok([l1, l2.sqrt(), linf])
}

/// `(L1, L2, L∞)` distance between a state and a smooth function, by
/// per-cell Gauss quadrature with `n_quad` nodes.
pub fn error_vs_function<F: Fn(f64) -> f64>(
    state: &PolyState,
    reference: F,
    n_quad: usize,
) -> [f64; 3] {
    let rule = GaussRule::new(n_quad.max(state.degree + 2));
    let dx = state.grid.dx;
    let (mut l1, mut l2, mut linf) = (0.0, 0.0, 0.0_f64);
    for i in 0..state.n_cells() {
        for (g, &xi) in rule.nodes.iter().enumerate() {
            let w = rule.weights[g];
            let x = state.grid.from_reference(i, xi);
            let d = state.eval_in_cell(i, xi) - reference(x);
            l1 += w * d.abs() * dx / 2.0;
            l2 += w * d * d * dx / 2.0;
            linf = linf.max(d.abs());
        }
    }
    [l1, l2.sqrt(), linf]
}
