//! Numerically stable power differences and tail sums.
//!
//! The closed-form stencil weights are second differences of `m^s`, which
//! cancel catastrophically for large `m` if evaluated term by term. The
//! helpers here switch to rapidly-convergent series once that matters.

/// `(m+1)^s - 2 m^s + (m-1)^s`, stable for all `m ≥ 1`.
///
/// For large `m` uses `m^s · 2 Σ_{j≥1} C(s, 2j) m^{-2j}`.
pub(crate) fn central_second_diff(m: f64, s: f64) -> f64 {
    if m <= 32.0 {
        return (m + 1.0).powf(s) - 2.0 * m.powf(s) + (m - 1.0).powf(s);
    }
    let x2 = 1.0 / (m * m);
    // binom(s, 2j) x^{2j}, accumulated by the ratio recurrence.
    let mut coeff = s * (s - 1.0) / 2.0; // binom(s, 2)
    let mut term = coeff * x2;
    let mut sum = term;
    let mut j = 1usize;
    while term.abs() > 1e-18 * sum.abs().max(1e-300) && j < 30 {
        let two_j = 2.0 * j as f64;
        coeff *= (s - two_j) * (s - two_j - 1.0) / ((two_j + 1.0) * (two_j + 2.0));
        term = coeff * x2.powi(j as i32 + 1);
        sum += term;
        j += 1;
    }
    2.0 * m.powf(s) * sum
}

/// `(m+1)^s - m^s`, stable for all `m ≥ 0`.
pub(crate) fn forward_diff_pow(m: f64, s: f64) -> f64 {
    if m <= 32.0 {
        return (m + 1.0).powf(s) - m.powf(s);
    }
    // m^s (exp(s ln(1 + 1/m)) - 1)
    m.powf(s) * libm::expm1(s * libm::log1p(1.0 / m))
}

/// Euler-Maclaurin tail of the Hurwitz-type sum `Σ_{r≥0} (x + r)^{-σ}` for
/// `σ > 1`, `x ≥ 8`. Relative accuracy ~1e-13 for `x ≥ 16`.
pub(crate) fn hurwitz_tail(sigma: f64, x: f64) -> f64 {
    debug_assert!(sigma > 1.0 && x > 1.0);
    let lead = x.powf(1.0 - sigma) / (sigma - 1.0);
    let half = 0.5 * x.powf(-sigma);
    let b2 = sigma * x.powf(-sigma - 1.0) / 12.0;
    let b4 = -sigma * (sigma + 1.0) * (sigma + 2.0) * x.powf(-sigma - 3.0) / 720.0;
    let b6 = sigma
        * (sigma + 1.0)
        * (sigma + 2.0)
        * (sigma + 3.0)
        * (sigma + 4.0)
        * x.powf(-sigma - 5.0)
        / 30240.0;
    lead + half + b2 + b4 + b6
}
