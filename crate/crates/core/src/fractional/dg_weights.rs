//! Nonlocal coupling integrals of the Legendre elements:
//! `W_m[q][p] = ∫_{I_0} φ_{q,0}(x) · g[φ_{p,m}](x) dx`.
//!
//! In reference coordinates every entry scales as
//! `W_m[q][p] = c_λ Δx^{1-λ} 2^{λ-1} · J_m(q,p)` with
//! `J_m(q,p) = ∫∫ P_q(ξ) P_p(η) |2m + η - ξ|^{-1-λ} dη dξ` (principal-value
//! difference form for `m = 0`). Three regimes keep every entry accurate to
//! ~1e-12 relative:
//!
//! * `m = 0`: the singular self-cell integral has an exact antiderivative
//!   expansion (the kernel is integrated twice; the basis is polynomial);
//! * `|m| = 1`: the inner integral is exact; the outer integral splits into
//!   exact one-sided moments of the `(1-ξ)^{j-λ}` endpoint singularity plus
//!   an analytic remainder handled by Gauss quadrature;
//! * `|m| ≥ 2`: a multipole expansion in `(η-ξ)/(2m)`; direct use of the
//!   antiderivative formulas would cancel catastrophically in the far field.
//!
//! Entries for `m < 0` follow from self-adjointness of the operator:
//! `W_{-m}[q][p] = W_m[p][q]`.

use super::normalization::normalization_c_lambda;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quadrature::GaussRule;

/// Highest multipole order kept in the far-field series (enough for
/// `|m| ≥ 2` at full double precision).
pub(crate) const T_MAX: usize = 64;

/// Table of nonlocal DG coupling weights for elements of degree `k`.
#[derive(Debug, Clone)]
pub struct DgWeightTable {
    pub k: usize,
    pub lambda: f64,
    pub c_lambda: f64,
    pub dx: f64,
    pub m_max: usize,
    block: usize,
    entries: Vec<f64>,
    /// Double moments `M_t(q,p) = ∫∫ P_q(ξ) P_p(η) (η-ξ)^t`, kept for the
    /// periodic fold's far-field tail sums.
    pub(crate) moments: Vec<f64>,
}

/// Builds the coupling table for degree `k ∈ {1, 2}` out to offset `m_max`.
pub fn build_dg_weights(lambda: f64, dx: f64, k: usize, m_max: usize) -> Result<DgWeightTable> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "weight tables are for degrees 1 and 2, got {k}"
        )));
    }
    if !(dx > 0.0) || m_max == 0 {
        return Err(Error::InvalidParameter("need dx > 0 and m_max >= 1".into()));
    }
    let c_lambda = normalization_c_lambda(lambda)?;
    let block = (k + 1) * (k + 1);
    let pref = prefactor(lambda, c_lambda, dx);
    let moments = double_moments(k);

    let mut entries = vec![0.0; (2 * m_max + 1) * block];
    let idx = |m: isize, q: usize, p: usize| -> usize {
        ((m + m_max as isize) as usize) * block + q * (k + 1) + p
    };

    for q in 0..=k {
        for p in 0..=k {
            entries[idx(0, q, p)] = pref * self_cell_j(lambda, q, p)?;
            entries[idx(1, q, p)] = pref * near_cell_j(lambda, q, p)?;
        }
    }
    // far field by multipole, then negative offsets by self-adjointness
    for m in 2..=m_max {
        for q in 0..=k {
            for p in 0..=k {
                entries[idx(m as isize, q, p)] =
                    pref * far_field_j(lambda, &moments, k, m, q, p);
            }
        }
    }
    for m in 1..=m_max as isize {
        for q in 0..=k {
            for p in 0..=k {
                entries[idx(-m, q, p)] = entries[idx(m, p, q)];
            }
        }
    }

    Ok(DgWeightTable { k, lambda, c_lambda, dx, m_max, block, entries, moments })
}

impl DgWeightTable {
    /// `W_m[q][p]`; zero beyond the truncation radius.
    #[inline]
    pub fn weight(&self, m: isize, q: usize, p: usize) -> f64 {
        if m.unsigned_abs() > self.m_max {
            return 0.0;
        }
        self.entries[(m + self.m_max as isize) as usize * self.block + q * (self.k + 1) + p]
    }

    /// Far-field entry beyond the stored radius, from the multipole series.
    pub(crate) fn far_entry(&self, m: usize, q: usize, p: usize) -> f64 {
        debug_assert!(m >= 2);
        prefactor(self.lambda, self.c_lambda, self.dx)
            * far_field_j(self.lambda, &self.moments, self.k, m, q, p)
    }
}

#[inline]
pub(crate) fn prefactor(lambda: f64, c_lambda: f64, dx: f64) -> f64 {
    c_lambda * dx.powf(1.0 - lambda) * (lambda - 1.0).exp2()
}

/// `∫_{-1}^{1} R(ξ) (1-ξ)^s dξ` for polynomial `R` and `s > -1`, by the exact
/// Taylor expansion of `R` about `ξ = 1`.
fn moment_one_minus(r: &Poly, s: f64) -> f64 {
    let mut acc = 0.0;
    let mut fact = 1.0;
    for i in 0..=r.degree() {
        if i > 0 {
            fact *= i as f64;
        }
        let coef = r.derivative_n(i).eval(1.0) / fact;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += coef * sign * (s + i as f64 + 1.0).exp2() / (s + i as f64 + 1.0);
    }
    acc
}

/// `∫_{-1}^{1} R(ξ) (1+ξ)^s dξ`, expansion about `ξ = -1`.
fn moment_one_plus(r: &Poly, s: f64) -> f64 {
    let mut acc = 0.0;
    let mut fact = 1.0;
    for i in 0..=r.degree() {
        if i > 0 {
            fact *= i as f64;
        }
        let coef = r.derivative_n(i).eval(-1.0) / fact;
        acc += coef * (s + i as f64 + 1.0).exp2() / (s + i as f64 + 1.0);
    }
    acc
}

/// Self-cell `J_0(q,p)`. Splitting the kernel integral at the cell
/// boundaries gives, for `φ_p` the degree-`p` polynomial on the cell,
///
/// ```text
/// g[φ_p](x)/c_λ = Σ_{j≥1} φ_p^{(j)}(x)/j! [(h-x)^{j-λ} + (-1)^j x^{j-λ}]/(j-λ)
///               - φ_p(x) [x^{-λ} + (h-x)^{-λ}]/λ,
/// ```
///
/// and every outer moment against `φ_q` reduces to the exact one-sided
/// moments above.
fn self_cell_j(lambda: f64, q: usize, p: usize) -> Result<f64> {
    let pq = Poly::legendre(q);
    let pp = Poly::legendre(p);
    let mut total = 0.0;
    let mut fact = 1.0;
    for j in 1..=p {
        fact *= j as f64;
        let r = pq.mul(&pp.derivative_n(j));
        let s = j as f64 - lambda;
        // (1-ξ)^{j-λ} from the right gap, (-1)^j (1+ξ)^{j-λ} from the left
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let i_j = moment_one_minus(&r, s) + sign * moment_one_plus(&r, s);
        total += i_j / (fact * s);
    }
    let r = pq.mul(&pp);
    let i0 = moment_one_plus(&r, -lambda) + moment_one_minus(&r, -lambda);
    total -= i0 / lambda;
    Ok(total)
}

/// Adjacent-cell `J_1(q,p)`. The exact inner integral is
///
/// ```text
/// inner(ξ) = ∫_{-1}^{1} P_p(η) (2 + η - ξ)^{-1-λ} dη
///          = Σ_{j=0}^{p} P_p^{(j)}(ξ-2)/(j!(j-λ)) [(3-ξ)^{j-λ} - (1-ξ)^{j-λ}].
/// ```
///
/// Against `P_q` the `(1-ξ)^{j-λ}` pieces (singular at the shared interface)
/// reduce to the exact one-sided moments; the `(3-ξ)^{j-λ}` pieces are
/// analytic well beyond the element and a Gauss rule integrates them to
/// round-off.
fn near_cell_j(lambda: f64, q: usize, p: usize) -> Result<f64> {
    let pq = Poly::legendre(q);
    let pp = Poly::legendre(p);
    let rule = GaussRule::new(24);
    let mut total = 0.0;
    let mut fact = 1.0;
    for j in 0..=p {
        if j > 0 {
            fact *= j as f64;
        }
        let s = j as f64 - lambda;
        let r = pq.mul(&pp.derivative_n(j).shift(-2.0));
        let smooth = rule.integrate(-1.0, 1.0, |xi| r.eval(xi) * (3.0 - xi).powf(s));
        let singular = moment_one_minus(&r, s);
        let term = (smooth - singular) / (fact * s);
        if !term.is_finite() {
            return Err(Error::QuadratureFailure { tolerance: 1e-13, estimate: f64::NAN });
        }
        total += term;
    }
    Ok(total)
}

/// Double moments `M_t(q,p)` for `t = 0..=T_MAX`, exact by tensor Gauss.
pub(crate) fn double_moments(k: usize) -> Vec<f64> {
    let bs = (k + 1) * (k + 1);
    let rule = GaussRule::new(T_MAX / 2 + k + 2);
    let mut out = vec![0.0; (T_MAX + 1) * bs];
    for (gx, &xi) in rule.nodes.iter().enumerate() {
        let wx = rule.weights[gx];
        for (gy, &eta) in rule.nodes.iter().enumerate() {
            let w = wx * rule.weights[gy];
            let base = eta - xi;
            let mut pw = 1.0;
            for t in 0..=T_MAX {
                for q in 0..=k {
                    for p in 0..=k {
                        out[t * bs + q * (k + 1) + p] += w
                            * crate::basis::legendre(q, xi)
                            * crate::basis::legendre(p, eta)
                            * pw;
                    }
                }
                pw *= base;
            }
        }
    }
    out
}

/// Far-field `J_m(q,p) = Σ_t (-1)^t C(λ+t, t) (2m)^{-1-λ-t} M_t(q,p)` for
/// `m ≥ 2` (binomial expansion of `(2m + η - ξ)^{-1-λ}`).
pub(crate) fn far_field_j(lambda: f64, moments: &[f64], k: usize, m: usize, q: usize, p: usize) -> f64 {
    let bs = (k + 1) * (k + 1);
    let two_m = 2.0 * m as f64;
    let mut binom = 1.0; // C(λ+t, t) at t = 0
    let mut scale = two_m.powf(-1.0 - lambda);
    let mut sum = 0.0;
    let mut small_streak = 0;
    for t in 0..=T_MAX {
        let mt = moments[t * bs + q * (k + 1) + p];
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * binom * scale * mt;
        sum += term;
        // moments of alternating parity vanish identically, so quit only
        // after two consecutive negligible terms
        if t > k + p + q && term.abs() < 1e-18 * sum.abs().max(1e-300) {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
        binom *= (lambda + 1.0 + t as f64) / (t as f64 + 1.0);
        scale /= two_m;
    }
    sum
}
