//! Two-point monotone numerical fluxes.
//!
//! A flux `F(a, b)` is consistent (`F(a,a) = f(a)`), nondecreasing in its
//! first argument and nonincreasing in its second. Monotonicity is only
//! required — and for Lax-Friedrichs only holds — on the invariant box
//! `[-‖u0‖∞, ‖u0‖∞]`, which the schemes never leave.

use crate::error::{Error, Result};
use crate::quadrature::GaussRule;

/// Physical flux `f` of the conservation law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhysicalFlux {
    /// `f ≡ 0` (pure fractional diffusion).
    Zero,
    /// `f(u) = c u`.
    Linear { c: f64 },
    /// `f(u) = u²/2`.
    Burgers,
}

impl PhysicalFlux {
    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            PhysicalFlux::Zero => 0.0,
            PhysicalFlux::Linear { c } => c * u,
            PhysicalFlux::Burgers => 0.5 * u * u,
        }
    }

    #[inline]
    pub fn deriv(&self, u: f64) -> f64 {
        match *self {
            PhysicalFlux::Zero => 0.0,
            PhysicalFlux::Linear { c } => c,
            PhysicalFlux::Burgers => u,
        }
    }

    /// `max |f'|` over `[-u_inf, u_inf]`.
    pub fn max_abs_deriv(&self, u_inf: f64) -> f64 {
        match *self {
            PhysicalFlux::Zero => 0.0,
            PhysicalFlux::Linear { c } => c.abs(),
            PhysicalFlux::Burgers => u_inf.abs(),
        }
    }
}

/// Flux formula selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    LaxFriedrichs,
    EngquistOsher,
    Godunov,
    /// `F(a,b) = (c/2)(a+b) - (|c|/2)(b-a)`; the common reduction of the
    /// monotone fluxes for a linear `f`.
    LinearUpwind,
}

impl FluxKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lax_friedrichs" => Ok(Self::LaxFriedrichs),
            "engquist_osher" => Ok(Self::EngquistOsher),
            "godunov" => Ok(Self::Godunov),
            "linear_upwind" => Ok(Self::LinearUpwind),
            other => Err(Error::InvalidParameter(format!("unknown flux kind `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::LaxFriedrichs => "lax_friedrichs",
            Self::EngquistOsher => "engquist_osher",
            Self::Godunov => "godunov",
            Self::LinearUpwind => "linear_upwind",
        }
    }
}

/// A numerical flux together with the data needed for CFL control: the
/// Lax-Friedrichs speed and the one-sided Lipschitz constants over the
/// invariant box.
#[derive(Debug, Clone)]
pub struct FluxSpec {
    pub kind: FluxKind,
    pub f: PhysicalFlux,
    /// `c = max{|f'(a)| : |a| ≤ ‖u0‖∞}`, the Lax-Friedrichs speed.
    pub lf_speed: f64,
    /// Radius of the invariant box.
    pub u_inf: f64,
}

impl FluxSpec {
    pub fn new(kind: FluxKind, f: PhysicalFlux, u_inf: f64) -> Result<Self> {
        if !(u_inf >= 0.0) {
            return Err(Error::InvalidParameter(format!("u_inf must be >= 0, got {u_inf}")));
        }
        if kind == FluxKind::LinearUpwind && matches!(f, PhysicalFlux::Burgers) {
            return Err(Error::InvalidParameter(
                "linear_upwind flux requires a linear physical flux".into(),
            ));
        }
        let lf_speed = f.max_abs_deriv(u_inf);
        Ok(Self { kind, f, lf_speed, u_inf })
    }

    /// Evaluates the numerical flux.
    pub fn evaluate(&self, a: f64, b: f64) -> f64 {
        match self.kind {
            FluxKind::LaxFriedrichs => {
                0.5 * (self.f.eval(a) + self.f.eval(b) - self.lf_speed * (b - a))
            }
            FluxKind::LinearUpwind => {
                let c = match self.f {
                    PhysicalFlux::Linear { c } => c,
                    PhysicalFlux::Zero => 0.0,
                    PhysicalFlux::Burgers => unreachable!("rejected in constructor"),
                };
                0.5 * c * (a + b) - 0.5 * c.abs() * (b - a)
            }
            FluxKind::EngquistOsher => self.split_plus(a) + self.split_minus(b),
            FluxKind::Godunov => {
                if a <= b {
                    self.min_on(a, b)
                } else {
                    self.max_on(b, a)
                }
            }
        }
    }

    /// Engquist-Osher splitting `f⁺(a) = f(0) + ∫_0^a max(f', 0)`.
    fn split_plus(&self, a: f64) -> f64 {
        match self.f {
            PhysicalFlux::Zero => 0.0,
            PhysicalFlux::Linear { c } => {
                if c >= 0.0 {
                    c * a
                } else {
                    0.0
                }
            }
            PhysicalFlux::Burgers => 0.5 * a.max(0.0).powi(2),
        }
    }

    /// `f⁻(b) = ∫_0^b min(f', 0)`.
    fn split_minus(&self, b: f64) -> f64 {
        match self.f {
            PhysicalFlux::Zero => 0.0,
            PhysicalFlux::Linear { c } => {
                if c < 0.0 {
                    c * b
                } else {
                    0.0
                }
            }
            PhysicalFlux::Burgers => 0.5 * b.min(0.0).powi(2),
        }
    }

    /// `min f` over `[lo, hi]` (closed forms; `f` has at most one critical
    /// point).
    fn min_on(&self, lo: f64, hi: f64) -> f64 {
        match self.f {
            PhysicalFlux::Zero => 0.0,
            PhysicalFlux::Linear { .. } => self.f.eval(lo).min(self.f.eval(hi)),
            PhysicalFlux::Burgers => {
                if lo <= 0.0 && 0.0 <= hi {
                    0.0
                } else {
                    self.f.eval(lo).min(self.f.eval(hi))
                }
            }
        }
    }

    fn max_on(&self, lo: f64, hi: f64) -> f64 {
        // every supported f attains its max over an interval at an endpoint
        self.f.eval(lo).max(self.f.eval(hi))
    }

    /// One-sided Lipschitz constants `(F1, F2)` of `F` on the invariant box.
    ///
    /// These feed the CFL conditions, so they bound the derivatives in the
    /// monotonicity-relevant direction: for Lax-Friedrichs both are
    /// `½(max|f'| + c)` (the slope of `∂F/∂b` reaches `-½(c + max|f'|)`).
    pub fn lipschitz_constants(&self) -> (f64, f64) {
        let dmax = self.f.max_abs_deriv(self.u_inf);
        match self.kind {
            FluxKind::LaxFriedrichs => {
                let c = 0.5 * (dmax + self.lf_speed);
                (c, c)
            }
            FluxKind::LinearUpwind => {
                let c = match self.f {
                    PhysicalFlux::Linear { c } => c,
                    _ => 0.0,
                };
                if c >= 0.0 {
                    (c, 0.0)
                } else {
                    (0.0, -c)
                }
            }
            FluxKind::EngquistOsher | FluxKind::Godunov => {
                // |∂F/∂a| ≤ max(f')⁺, |∂F/∂b| ≤ max(-f')⁺ over the box
                let (mut dplus, mut dminus) = (0.0_f64, 0.0_f64);
                match self.f {
                    PhysicalFlux::Zero => {}
                    PhysicalFlux::Linear { c } => {
                        dplus = c.max(0.0);
                        dminus = (-c).max(0.0);
                    }
                    PhysicalFlux::Burgers => {
                        dplus = self.u_inf;
                        dminus = self.u_inf;
                    }
                }
                (dplus, dminus)
            }
        }
    }

    /// Checks the E-flux property `F(a,b)(b-a) - ∫_a^b f ≤ tol` on the given
    /// sample pairs (integral by high-order quadrature).
    pub fn is_eflux(&self, samples: &[(f64, f64)]) -> bool {
        let rule = GaussRule::new(20);
        samples.iter().all(|&(a, b)| {
            let integral = rule.integrate(a, b, |s| self.f.eval(s));
            self.evaluate(a, b) * (b - a) - integral <= 1e-12
        })
    }
}
