//! Periodization of the nonlocal weights.
//!
//! On a torus of `n` cells the infinite Toeplitz stencil folds into a
//! circulant, `C_d = Σ_{r∈Z} G_{d+rn}`. Offsets up to `m0 = max(4096, 16n)`
//! are summed directly; the remainder of each residue class is a Hurwitz-type
//! tail of the large-`m` power series of the weights, summed by
//! Euler-Maclaurin. Total row sums vanish identically, so the diagonal is
//! finally recomputed as minus the off-diagonal sum — the numerically stable
//! form of the same quantity.

use super::dg_weights::{prefactor, DgWeightTable, T_MAX};
use super::special::hurwitz_tail;
use super::stencil::{weight_offdiag, FracStencil};

fn direct_radius(n: usize) -> usize {
    (16 * n).max(4096)
}

/// Folds the piecewise-constant stencil into circulant weights `C_0..C_{n-1}`.
pub(crate) fn periodic_fold_scalar(st: &FracStencil, n: usize) -> Vec<f64> {
    let m0 = direct_radius(n);
    let mut c = vec![0.0; n];
    c[0] += st.g0;
    for m in 1..=m0 {
        let g = weight_offdiag(st.lambda, st.c_lambda, st.dx, m);
        c[m % n] += g;
        c[(n - m % n) % n] += g;
    }
    for b in 0..n {
        let t = scalar_class_tail(st, n, m0, b);
        c[b] += t;
        c[(n - b) % n] += t;
    }
    if n > 1 {
        c[0] = -c[1..].iter().sum::<f64>();
    } else {
        c[0] = 0.0;
    }
    c
}

/// `Σ G_m` over the residue class `m ≡ b (mod n)`, `m > m0`, via the even
/// power series of the weights and Euler-Maclaurin zeta tails.
fn scalar_class_tail(st: &FracStencil, n: usize, m0: usize, b: usize) -> f64 {
    let s = 1.0 - st.lambda;
    let kappa = st.c_lambda * st.dx.powf(s) / (st.lambda * s);
    let r0 = (m0 - b) / n + 1;
    let x = r0 as f64 + b as f64 / n as f64;
    let nf = n as f64;
    // G(m) = -2κ Σ_{j≥1} C(s, 2j) m^{s-2j}
    let mut coeff = s * (s - 1.0) / 2.0; // C(s, 2)
    let mut total = 0.0;
    for j in 1..=8usize {
        let sigma = 2.0 * j as f64 - 1.0 + st.lambda;
        let term = coeff * nf.powf(-sigma) * hurwitz_tail(sigma, x);
        total += term;
        if term.abs() < 1e-18 * total.abs().max(1e-300) {
            break;
        }
        let tj = 2.0 * j as f64;
        coeff *= (s - tj) * (s - tj - 1.0) / ((tj + 1.0) * (tj + 2.0));
    }
    -2.0 * kappa * total
}

/// Folds a DG coupling table into per-offset blocks
/// `CW_d[q][p] = Σ_{r∈Z} W_{d+rn}[q][p]`, returned as a flat
/// `[d * (k+1)² + q * (k+1) + p]` vector.
pub(crate) fn periodic_fold_block(table: &DgWeightTable, n: usize) -> Vec<f64> {
    let k = table.k;
    let kk = k + 1;
    let bs = kk * kk;
    let m0 = direct_radius(n);
    let mut c = vec![0.0; n * bs];

    for q in 0..=k {
        for p in 0..=k {
            c[q * kk + p] += table.weight(0, q, p);
        }
    }
    for m in 1..=m0 {
        let fwd = m % n;
        let bwd = (n - fwd) % n;
        for q in 0..=k {
            for p in 0..=k {
                let w = if m <= table.m_max {
                    table.weight(m as isize, q, p)
                } else {
                    table.far_entry(m, q, p)
                };
                // +m offset contributes W_m[q][p]; the mirrored offset -m
                // contributes W_{-m}[q][p] = W_m[p][q].
                c[fwd * bs + q * kk + p] += w;
                c[bwd * bs + p * kk + q] += w;
            }
        }
    }
    for b in 0..n {
        let r0 = (m0 - b) / n + 1;
        let x = r0 as f64 + b as f64 / n as f64;
        for q in 0..=k {
            for p in 0..=k {
                let t = block_class_tail(table, n, x, q, p);
                c[b * bs + q * kk + p] += t;
                c[((n - b) % n) * bs + p * kk + q] += t;
            }
        }
    }
    // Constants lie in the kernel of the operator: every column block with
    // p = 0 sums to zero over offsets. Recompute the diagonal entry of those
    // columns from the rest.
    for q in 0..=k {
        let mut off = 0.0;
        for d in 1..n {
            off += c[d * bs + q * kk];
        }
        c[q * kk] = -off;
    }
    c
}

/// Far tail of one residue class of `W_m[q][p]`, from the multipole series
/// term by term: `Σ_m m^{-1-λ-t}` over the class is a Hurwitz tail.
fn block_class_tail(table: &DgWeightTable, n: usize, x: f64, q: usize, p: usize) -> f64 {
    let k = table.k;
    let bs = (k + 1) * (k + 1);
    let lambda = table.lambda;
    let pref = prefactor(lambda, table.c_lambda, table.dx);
    let nf = n as f64;
    let mut binom = 1.0;
    let mut total = 0.0;
    let mut small_streak = 0;
    for t in 0..=T_MAX.min(16) {
        let sigma = 1.0 + lambda + t as f64;
        let mt = table.moments[t * bs + q * (k + 1) + p];
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let term =
            sign * binom * 2.0_f64.powf(-sigma) * mt * nf.powf(-sigma) * hurwitz_tail(sigma, x);
        total += term;
        if t > 2 * k && term.abs() < 1e-18 * total.abs().max(1e-300) {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
        binom *= (lambda + 1.0 + t as f64) / (t as f64 + 1.0);
    }
    pref * total
}
