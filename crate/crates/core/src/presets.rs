//! Initial-data presets used by the experiments and the CLI.

use crate::error::{Error, Result};

type EvalFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// An initial datum: the function, its non-smooth points (so projections can
/// integrate piecewise exactly) and its sup norm (which sets the invariant
/// box of the fluxes).
pub struct InitialData {
    pub name: String,
    eval: EvalFn,
    pub breakpoints: Vec<f64>,
    pub sup_norm: f64,
}

impl std::fmt::Debug for InitialData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InitialData")
            .field("name", &self.name)
            .field("breakpoints", &self.breakpoints)
            .field("sup_norm", &self.sup_norm)
            .finish()
    }
}

impl InitialData {
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// `u0(x) = -sgn(x)`.
    pub fn sgn() -> Self {
        Self {
            name: "sgn".into(),
            eval: Box::new(|x| if x < 0.0 { 1.0 } else { -1.0 }),
            breakpoints: vec![0.0],
            sup_norm: 1.0,
        }
    }

    /// `u0(x) = -arctan(15x)/90`.
    pub fn arctan() -> Self {
        Self {
            name: "arctan".into(),
            eval: Box::new(|x| -(15.0 * x).atan() / 90.0),
            breakpoints: vec![],
            sup_norm: std::f64::consts::FRAC_PI_2 / 90.0,
        }
    }

    /// `u0(x) = sgn(x)·1_{|x|>1/4} + 4x·1_{|x|≤1/4}` (continuous ramp between
    /// the two constant states).
    pub fn sgn_hat() -> Self {
        Self {
            name: "sgn_hat".into(),
            eval: Box::new(|x| {
                if x.abs() > 0.25 {
                    x.signum()
                } else {
                    4.0 * x
                }
            }),
            breakpoints: vec![-0.25, 0.25],
            sup_norm: 1.0,
        }
    }

    /// `u0(x) = sin(2πx)`.
    pub fn sin2pi() -> Self {
        Self {
            name: "sin2pi".into(),
            eval: Box::new(|x| (2.0 * std::f64::consts::PI * x).sin()),
            breakpoints: vec![],
            sup_norm: 1.0,
        }
    }

    /// Symmetric triangular hat `u0(x) = max(0, 1 - 2|x|)`, supported on
    /// `[-1/2, 1/2]` with unit peak.
    pub fn hat() -> Self {
        Self {
            name: "hat".into(),
            eval: Box::new(|x| (1.0 - 2.0 * x.abs()).max(0.0)),
            breakpoints: vec![-0.5, 0.0, 0.5],
            sup_norm: 1.0,
        }
    }

    /// `u0(x) = exp(-x²/(2σ²))`.
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self {
            name: format!("gaussian(sigma={sigma})"),
            eval: Box::new(move |x| (-x * x / (2.0 * sigma * sigma)).exp()),
            breakpoints: vec![],
            sup_norm: 1.0,
        })
    }

    /// Arbitrary datum from a closure.
    pub fn custom<F: Fn(f64) -> f64 + Send + Sync + 'static>(
        name: &str,
        f: F,
        breakpoints: Vec<f64>,
        sup_norm: f64,
    ) -> Self {
        Self { name: name.into(), eval: Box::new(f), breakpoints, sup_norm }
    }

    /// Looks up a preset by CLI name.
    pub fn preset(name: &str, gaussian_sigma: f64) -> Result<Self> {
        match name {
            "sgn" => Ok(Self::sgn()),
            "arctan" => Ok(Self::arctan()),
            "sgn_hat" => Ok(Self::sgn_hat()),
            "sin2pi" => Ok(Self::sin2pi()),
            "hat" => Ok(Self::hat()),
            "gaussian" => Self::gaussian(gaussian_sigma),
            other => Err(Error::InvalidParameter(format!("unknown initial-data preset `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_values() {
        assert_eq!(InitialData::sgn().eval(-0.5), 1.0);
        assert_eq!(InitialData::sgn().eval(0.5), -1.0);
        let s = InitialData::sin2pi();
        assert!((s.eval(0.25) - 1.0).abs() < 1e-15);
        let h = InitialData::sgn_hat();
        assert_eq!(h.eval(0.5), 1.0);
        assert_eq!(h.eval(-0.5), -1.0);
        assert!((h.eval(0.1) - 0.4).abs() < 1e-15);
        // continuity at the kink
        assert!((h.eval(0.25) - 1.0).abs() < 1e-15);
        let hat = InitialData::hat();
        assert_eq!(hat.eval(0.0), 1.0);
        assert_eq!(hat.eval(0.75), 0.0);
        assert!((InitialData::arctan().eval(1.0) + (15.0_f64).atan() / 90.0).abs() < 1e-15);
    }

    #[test]
    fn preset_lookup() {
        assert!(InitialData::preset("sin2pi", 0.0).is_ok());
        assert!(InitialData::preset("nope", 0.0).is_err());
        assert!(InitialData::preset("gaussian", -1.0).is_err());
        assert!(InitialData::preset("gaussian", 0.3).is_ok());
    }
}
