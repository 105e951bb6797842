//! Fully discrete schemes.
//!
//! * `explicit_fv` — piecewise constants, forward Euler, nonlocal term at the
//!   old level; monotone under the CFL restriction
//!   `(F1+F2)Δt/Δx + d_λΔt/Δx^λ ≤ 1`.
//! * `imex_fv` — convection explicit, diffusion implicit; the CFL restriction
//!   `(F1+F2)Δt/Δx ≤ 1` no longer involves the nonlocal term.
//! * `dg_rk3` — Legendre elements of degree `k ≤ 2`, SSP-RK3 in time with TVB
//!   limiting after every stage, step size additionally divided by `2k+1`.

use crate::basis;
use crate::boundary::BoundaryMode;
use crate::error::{Error, Result};
use crate::flux::FluxSpec;
use crate::fractional::apply::{DgNonlocalOperator, ToeplitzOperator};
use crate::fractional::dg_weights::build_dg_weights;
use crate::fractional::implicit::solve_implicit;
use crate::fractional::normalization::d_lambda;
use crate::fractional::stencil::FracStencil;
use crate::grid::GridSpec;
use crate::limiter::tvb_limit;
use crate::presets::InitialData;
use crate::project::project_l2;
use crate::quadrature::GaussRule;
use crate::state::PolyState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    ExplicitFv,
    ImexFv,
    DgRk3,
}

impl SchemeKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "explicit_fv" => Ok(Self::ExplicitFv),
            "imex_fv" => Ok(Self::ImexFv),
            "dg_rk3" => Ok(Self::DgRk3),
            other => Err(Error::InvalidParameter(format!("unknown scheme kind `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::ExplicitFv => "explicit_fv",
            Self::ImexFv => "imex_fv",
            Self::DgRk3 => "dg_rk3",
        }
    }
}

/// Everything a run needs besides the grid and the initial datum.
#[derive(Debug, Clone)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    /// Element degree; must be 0 for the finite-volume schemes.
    pub degree: usize,
    pub lambda: f64,
    pub flux: FluxSpec,
    pub cfl_safety: f64,
    pub t_end: f64,
    /// TVB limiter parameter (0 = plain minmod), used for `k ≥ 1`.
    pub limiter_m: f64,
    pub boundary: BoundaryMode,
    /// Stencil truncation radius; defaults to the cell count (full window).
    pub m_trunc: Option<usize>,
}

impl SchemeConfig {
    fn validate(&self) -> Result<()> {
        match self.kind {
            SchemeKind::ExplicitFv | SchemeKind::ImexFv => {
                if self.degree != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "{} requires degree 0, got {}",
                        self.kind.name(),
                        self.degree
                    )));
                }
            }
            SchemeKind::DgRk3 => {
                if self.degree > basis::MAX_DEGREE {
                    return Err(Error::InvalidParameter(format!(
                        "dg_rk3 supports degrees 0..=2, got {}",
                        self.degree
                    )));
                }
            }
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "cfl_safety must lie in (0, 1], got {}",
                self.cfl_safety
            )));
        }
        if !(self.t_end >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t_end must be nonnegative, got {}",
                self.t_end
            )));
        }
        Ok(())
    }
}

/// Snapshot sequence produced by a run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PolyState>,
}

impl Trajectory {
    pub fn last(&self) -> &PolyState {
        self.states.last().expect("trajectory never empty")
    }
}

/// A configured scheme bound to one grid, with the nonlocal operators built.
pub struct Solver {
    pub cfg: SchemeConfig,
    pub grid: GridSpec,
    pub stencil: FracStencil,
    pub d_lambda: f64,
    op: ToeplitzOperator,
    dg: Option<DgNonlocalOperator>,
    volume_rule: GaussRule,
}

impl Solver {
    pub fn new(cfg: SchemeConfig, grid: GridSpec) -> Result<Self> {
        cfg.validate()?;
        let m_trunc = cfg.m_trunc.unwrap_or(grid.n_cells).max(1);
        let stencil = FracStencil::build(cfg.lambda, grid.dx, m_trunc)?;
        let op = ToeplitzOperator::new(&stencil, grid.n_cells, cfg.boundary)?;
        let dg = if cfg.kind == SchemeKind::DgRk3 && cfg.degree >= 1 {
            let table = build_dg_weights(cfg.lambda, grid.dx, cfg.degree, m_trunc)?;
            Some(DgNonlocalOperator::new(table, grid.n_cells, cfg.boundary)?)
        } else {
            None
        };
        let dl = d_lambda(cfg.lambda, stencil.c_lambda);
        let volume_rule = GaussRule::new(cfg.degree + 2);
        Ok(Self { cfg, grid, stencil, d_lambda: dl, op, dg, volume_rule })
    }

    /// The cell-averaged nonlocal operator `g⟨·⟩`.
    pub fn operator(&self) -> &ToeplitzOperator {
        &self.op
    }

    /// Step size from the applicable CFL condition.
    pub fn cfl_dt(&self) -> Result<f64> {
        let (f1, f2) = self.cfg.flux.lipschitz_constants();
        let fsum = f1 + f2;
        let dx = self.grid.dx;
        let diffusive = self.d_lambda / dx.powf(self.cfg.lambda);
        let dt = match self.cfg.kind {
            SchemeKind::ImexFv => {
                if fsum <= 0.0 {
                    return Err(Error::InvalidParameter(
                        "imex_fv time step is unbounded for a constant physical flux; \
                         use explicit_fv or dg_rk3"
                            .into(),
                    ));
                }
                self.cfg.cfl_safety * dx / fsum
            }
            SchemeKind::ExplicitFv => {
                let denom = fsum / dx + diffusive;
                if !(denom > 0.0) {
                    return Err(Error::InvalidParameter("degenerate CFL denominator".into()));
                }
                self.cfg.cfl_safety / denom
            }
            SchemeKind::DgRk3 => {
                let denom = (fsum / dx + diffusive) * (2.0 * self.cfg.degree as f64 + 1.0);
                if !(denom > 0.0) {
                    return Err(Error::InvalidParameter("degenerate CFL denominator".into()));
                }
                self.cfg.cfl_safety / denom
            }
        };
        Ok(dt)
    }

    /// Numerical fluxes at the `n+1` interfaces of a cell-average vector.
    fn interface_fluxes_avg(&self, u: &[f64]) -> Vec<f64> {
        let n = u.len() as isize;
        let mode = self.cfg.boundary;
        (0..=n)
            .map(|i| {
                let left = mode.get(u, i - 1);
                let right = mode.get(u, i);
                self.cfg.flux.evaluate(left, right)
            })
            .collect()
    }

    /// One forward-Euler step of the explicit finite-volume scheme.
    pub fn step_explicit_fv(&self, u: &[f64], dt: f64) -> Result<Vec<f64>> {
        let phi = self.interface_fluxes_avg(u);
        let gu = self.op.apply(u)?;
        let r = dt / self.grid.dx;
        Ok((0..u.len()).map(|i| u[i] - r * (phi[i + 1] - phi[i]) + dt * gu[i]).collect())
    }

    /// One implicit-explicit step: explicit convection predictor, implicit
    /// nonlocal diffusion.
    pub fn step_imex_fv(&self, u: &[f64], dt: f64) -> Result<Vec<f64>> {
        let phi = self.interface_fluxes_avg(u);
        let r = dt / self.grid.dx;
        let h: Vec<f64> =
            (0..u.len()).map(|i| u[i] - r * (phi[i + 1] - phi[i])).collect();
        solve_implicit(&self.op, dt, &h)
    }

    /// Semidiscrete right-hand side of the DG scheme:
    /// `dU_{q,i}/dt = (2q+1)/Δx [ ∫ f(ũ) φ'_{q,i} + (-1)^q F_i - F_{i+1}
    ///                            + ∫ g[ũ] φ_{q,i} ]`.
    pub fn dg_rhs(&self, state: &PolyState) -> Result<PolyState> {
        let n = state.n_cells();
        let k = state.degree;
        if k != self.cfg.degree {
            return Err(Error::InvalidParameter(format!(
                "state degree {k} does not match configured degree {}",
                self.cfg.degree
            )));
        }
        if k >= 1 && self.dg.is_none() {
            return Err(Error::MissingWeightTable(k));
        }
        let mode = self.cfg.boundary;
        let dx = self.grid.dx;

        // one-sided traces at the n+1 interfaces
        let mut phi = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let left = if i >= 1 {
                state.trace_right(i - 1)
            } else {
                match mode {
                    BoundaryMode::ZeroExtension => 0.0,
                    BoundaryMode::Periodic => state.trace_right(n - 1),
                }
            };
            let right = if i < n {
                state.trace_left(i)
            } else {
                match mode {
                    BoundaryMode::ZeroExtension => 0.0,
                    BoundaryMode::Periodic => state.trace_left(0),
                }
            };
            phi.push(self.cfg.flux.evaluate(left, right));
        }

        // nonlocal term as the raw coupling integrals ∫ g[ũ] φ_{q,i}
        let nonlocal: Vec<Vec<f64>> = if k == 0 {
            let gu = self.op.apply(state.averages())?;
            vec![gu.into_iter().map(|v| v * dx).collect()]
        } else {
            self.dg.as_ref().unwrap().apply_state(state)?
        };

        let mut deriv = PolyState::zeros(self.grid.clone(), k)?;
        for i in 0..n {
            for q in 0..=k {
                let mut volume = 0.0;
                if q >= 1 {
                    for (g, &xi) in self.volume_rule.nodes.iter().enumerate() {
                        let w = self.volume_rule.weights[g];
                        let u_val = state.eval_in_cell(i, xi);
                        volume += w
                            * self.cfg.flux.f.eval(u_val)
                            * basis::legendre_deriv(q, xi).expect("degree checked");
                    }
                }
                let flux_term = basis::sign_at_left(q) * phi[i] - phi[i + 1];
                let total = volume + flux_term + nonlocal[q][i];
                *deriv.coeff_mut(q, i) = (2.0 * q as f64 + 1.0) / dx * total;
            }
        }
        Ok(deriv)
    }

    fn limited(&self, state: PolyState) -> PolyState {
        if state.degree >= 1 {
            tvb_limit(&state, self.cfg.limiter_m, self.cfg.boundary)
        } else {
            state
        }
    }

    /// One Shu-Osher SSP-RK3 step of the DG scheme, limiting after every
    /// stage.
    pub fn step_rk3(&self, state: &PolyState, dt: f64) -> Result<PolyState> {
        let l0 = self.dg_rhs(state)?;
        let u1 = self.limited(state.lin_comb(1.0, &l0, dt));
        let l1 = self.dg_rhs(&u1)?;
        let mid = u1.lin_comb(0.25, &l1, 0.25 * dt);
        let u2 = self.limited(state.lin_comb(0.75, &mid, 1.0));
        let l2 = self.dg_rhs(&u2)?;
        let fin = u2.lin_comb(2.0 / 3.0, &l2, 2.0 / 3.0 * dt);
        Ok(self.limited(state.lin_comb(1.0 / 3.0, &fin, 1.0)))
    }

    /// One step of whichever scheme is configured.
    pub fn step(&self, state: &PolyState, dt: f64) -> Result<PolyState> {
        match self.cfg.kind {
            SchemeKind::ExplicitFv => {
                let u = self.step_explicit_fv(state.averages(), dt)?;
                PolyState::from_averages(self.grid.clone(), u)
            }
            SchemeKind::ImexFv => {
                let u = self.step_imex_fv(state.averages(), dt)?;
                PolyState::from_averages(self.grid.clone(), u)
            }
            SchemeKind::DgRk3 => self.step_rk3(state, dt),
        }
    }

    /// Projects the initial datum, marches to `t_end` and records snapshots
    /// at the requested times (default: final time only). Steps are shortened
    /// to land exactly on snapshot times and on `t_end`.
    pub fn run(&self, u0: &InitialData, snapshot_times: &[f64]) -> Result<Trajectory> {
        let t_end = self.cfg.t_end;
        let mut snaps: Vec<f64> = snapshot_times.to_vec();
        if snaps.is_empty() {
            snaps.push(t_end);
        }
        snaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        snaps.dedup();
        if snaps.iter().any(|&t| !(0.0..=t_end).contains(&t)) {
            return Err(Error::InvalidParameter(format!(
                "snapshot times must lie in [0, {t_end}]"
            )));
        }

        let mut state = project_l2(|x| u0.eval(x), &u0.breakpoints, &self.grid, self.cfg.degree)?;
        let mut t = 0.0;
        let dt_max = if t_end > 0.0 { self.cfl_dt()? } else { f64::INFINITY };

        let mut traj = Trajectory { times: Vec::new(), states: Vec::new() };
        for &target in &snaps {
            let seg = target - t;
            if seg > 1e-14 {
                let n_steps = (seg / dt_max).ceil().max(1.0) as usize;
                let dt = seg / n_steps as f64;
                for _ in 0..n_steps {
                    state = self.step(&state, dt)?;
                    t += dt;
                    if let Some((cell, value)) = state.find_non_finite() {
                        return Err(Error::NonFinite { time: t, cell, value });
                    }
                }
                t = target;
            }
            traj.times.push(target);
            traj.states.push(state.clone());
        }
        Ok(traj)
    }
}
