//! Quadrature rules: Gauss-Legendre on `[-1, 1]` and tanh-sinh (double
//! exponential) rules for integrands with algebraic endpoint singularities.

/// Gauss-Legendre rule on `[-1, 1]`, exact for polynomials of degree
/// `2n - 1`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one quadrature node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (_, d2) = legendre_with_deriv(n, x);
                    dp = d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_deriv(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tanh-sinh quadrature of `f` over `(a, b)`.
///
/// The integrand is called as `f(x, x - a, b - x)`; the distances to the
/// endpoints are computed without cancellation so that algebraic endpoint
/// singularities like `(b - x)^{-λ}` can be evaluated accurately.
///
/// Returns `(value, error_estimate)`.
pub fn tanh_sinh<F: FnMut(f64, f64, f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> (f64, f64) {
    use std::f64::consts::FRAC_PI_2;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    // Large enough that even strong algebraic endpoint singularities
    // (exponents approaching -1) are resolved before e^{-2s} underflows.
    let u_max = 6.0_f64;

    // Evaluate the transformed integrand at abscissa parameter u.
    let mut eval = |u: f64| -> f64 {
        let s = FRAC_PI_2 * u.sinh();
        // 1 - tanh(s) = 2 e^{-2s} / (1 + e^{-2s}), stable for s >> 1.
        let e = (-2.0 * s.abs()).exp();
        let dist = 2.0 * e / (1.0 + e); // distance of |tanh| from 1
        let t = if s >= 0.0 { 1.0 - dist } else { dist - 1.0 };
        let (da, db) = if s >= 0.0 {
            (half * (1.0 + t), half * dist)
        } else {
            (half * dist, half * (1.0 - t))
        };
        let x = mid + half * t;
        let dtdu = FRAC_PI_2 * u.cosh() / (s.cosh() * s.cosh());
        let v = f(x, da, db);
        if v.is_finite() {
            v * dtdu
        } else {
            0.0
        }
    };

    let mut h = u_max;
    let mut sum = eval(0.0);
    let mut prev = f64::INFINITY;
    let mut value = sum * h * half;
    for _level in 0..14 {
        h *= 0.5;
        // Add the new (odd-index) abscissas of the refined grid.
        let mut k = 1;
        loop {
            let u = k as f64 * h;
            if u > u_max {
                break;
            }
            sum += eval(u) + eval(-u);
            k += 2;
        }
        value = sum * h * half;
        let err = (value - prev).abs();
        if err <= tol * value.abs().max(1e-300) && _level >= 2 {
            return (value, err);
        }
        prev = value;
    }
    (value, (value - prev).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_is_exact_for_polynomials() {
        let rule = GaussRule::new(5);
        // degree 9 monomial over [-1,1]
        let val = rule.integrate(-1.0, 1.0, |x| x.powi(8));
        assert!((val - 2.0 / 9.0).abs() < 1e-14);
        let val = rule.integrate(0.0, 2.0, |x| 3.0 * x * x);
        assert!((val - 8.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_nodes_symmetric_and_weights_sum_to_two() {
        for n in 1..=12 {
            let rule = GaussRule::new(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}: weight sum {s}");
            for i in 0..n {
                assert!((rule.nodes[i] + rule.nodes[n - 1 - i]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let (v, _) = tanh_sinh(|_x, da, _db| da.powf(-0.5), 0.0, 1.0, 1e-13);
        assert!((v - 2.0).abs() < 1e-11, "got {v}");
        // ∫_0^1 (1-x)^{-0.9} dx = 10
        let (v, _) = tanh_sinh(|_x, _da, db| db.powf(-0.9), 0.0, 1.0, 1e-13);
        assert!((v - 10.0).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn tanh_sinh_smooth() {
        let (v, _) = tanh_sinh(|x, _, _| x.cos(), 0.0, 1.0, 1e-13);
        assert!((v - 1.0_f64.sin()).abs() < 1e-12);
    }
}
