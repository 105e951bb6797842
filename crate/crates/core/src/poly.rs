//! Small dense polynomials in monomial form, used when assembling the
//! nonlocal weight tables. Degrees never exceed a handful, so `Vec<f64>`
//! coefficient vectors (constant term first) are plenty.

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly(pub Vec<f64>);

impl Poly {
    pub fn legendre(p: usize) -> Self {
        match p {
            0 => Poly(vec![1.0]),
            1 => Poly(vec![0.0, 1.0]),
            2 => Poly(vec![-0.5, 0.0, 1.5]),
            _ => unreachable!("degree capped at 2"),
        }
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly(vec![0.0]);
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect())
    }

    /// `k`-th derivative.
    pub fn derivative_n(&self, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    /// Composition with the affine map `x -> x + s` (Taylor shift).
    pub fn shift(&self, s: f64) -> Poly {
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                c[j] += s * c[j + 1];
            }
        }
        Poly(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_eval() {
        let p = Poly::legendre(2).mul(&Poly::legendre(1)); // degree 3
        for &x in &[-1.0, 0.0, 0.5, 2.0] {
            let expect = (1.5 * x * x - 0.5) * x;
            assert!((p.eval(x) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_p2() {
        let d = Poly::legendre(2).derivative();
        assert!((d.eval(0.4) - 1.2).abs() < 1e-15);
    }

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = Poly::legendre(2).mul(&Poly::legendre(1));
        let q = p.shift(-2.0);
        for &x in &[-1.0, 0.0, 0.5, 2.0] {
            assert!((q.eval(x) - p.eval(x - 2.0)).abs() < 1e-12);
        }
    }
}
