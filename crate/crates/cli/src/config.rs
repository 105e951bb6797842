//! Run configuration: a TOML file with optional command-line overrides.
//! Unknown keys are rejected; cross-field constraints are checked when the
//! configuration is resolved.

use fraclaw_core::boundary::BoundaryMode;
use fraclaw_core::flux::{FluxKind, FluxSpec, PhysicalFlux};
use fraclaw_core::presets::InitialData;
use fraclaw_core::scheme::{SchemeConfig, SchemeKind};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("config syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
}

fn field_err(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field, message: message.into() }
}

/// Equation presets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EquationKind {
    PureFractional,
    LinearTransport { c: f64 },
    Burgers,
}

impl EquationKind {
    pub fn physical_flux(&self) -> PhysicalFlux {
        match *self {
            EquationKind::PureFractional => PhysicalFlux::Zero,
            EquationKind::LinearTransport { c } => PhysicalFlux::Linear { c },
            EquationKind::Burgers => PhysicalFlux::Burgers,
        }
    }
}

/// Raw file schema. Only `equation`, `lambda`, `n_cells` and `t_end` are
/// required; everything else has a documented default.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub equation: Option<String>,
    pub lambda: Option<f64>,
    pub n_cells: Option<usize>,
    pub t_end: Option<f64>,
    /// Transport speed for `linear_transport` (default 1).
    pub c: Option<f64>,
    /// Domain bounds (default `[-1.5, 1.5]`).
    pub domain: Option<[f64; 2]>,
    /// Element degree (default 0).
    pub k: Option<usize>,
    /// Numerical flux (default `lax_friedrichs`).
    pub flux: Option<String>,
    /// Scheme (default `explicit_fv`).
    pub scheme: Option<String>,
    /// Boundary treatment, `zero` or `periodic` (default `zero`).
    pub boundary: Option<String>,
    /// CFL safety factor (default 0.9).
    pub cfl_safety: Option<f64>,
    /// Snapshot times (default: final time only).
    pub snapshot_times: Option<Vec<f64>>,
    /// Initial-data preset (default `hat`).
    pub u0: Option<String>,
    /// Width of the `gaussian` preset (default 0.25).
    pub gaussian_sigma: Option<f64>,
    /// TVB limiter parameter (default 0 = plain minmod).
    pub limiter_m: Option<f64>,
    /// Output directory (default `out`).
    pub output_dir: Option<String>,
    /// Stencil truncation radius (default: the cell count).
    pub m_trunc: Option<usize>,
}

impl RawConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Ok(toml::from_str(&text)?)
    }

    /// Right-biased merge: fields set in `over` win.
    pub fn merged(mut self, over: RawConfig) -> RawConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            equation, lambda, n_cells, t_end, c, domain, k, flux, scheme, boundary,
            cfl_safety, snapshot_times, u0, gaussian_sigma, limiter_m, output_dir, m_trunc
        );
        self
    }
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub equation: EquationKind,
    pub lambda: f64,
    pub x_left: f64,
    pub x_right: f64,
    pub n_cells: usize,
    pub degree: usize,
    pub flux_kind: FluxKind,
    pub scheme_kind: SchemeKind,
    pub boundary: BoundaryMode,
    pub cfl_safety: f64,
    pub t_end: f64,
    pub snapshot_times: Vec<f64>,
    pub u0_name: String,
    pub gaussian_sigma: f64,
    pub limiter_m: f64,
    pub output_dir: String,
    pub m_trunc: Option<usize>,
}

impl RunConfig {
    pub fn resolve(raw: RawConfig) -> Result<Self, ConfigError> {
        let equation_name = raw
            .equation
            .ok_or_else(|| field_err("equation", "required (pure_fractional | linear_transport | burgers)"))?;
        let c = raw.c.unwrap_or(1.0);
        let equation = match equation_name.as_str() {
            "pure_fractional" => EquationKind::PureFractional,
            "linear_transport" => EquationKind::LinearTransport { c },
            "burgers" => EquationKind::Burgers,
            other => {
                return Err(field_err("equation", format!("unknown equation `{other}`")));
            }
        };
        if raw.c.is_some() && !matches!(equation, EquationKind::LinearTransport { .. }) {
            return Err(field_err("c", "only meaningful for linear_transport"));
        }
        let lambda = raw.lambda.ok_or_else(|| field_err("lambda", "required, in (0,1)"))?;
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(field_err("lambda", format!("must lie in (0,1), got {lambda}")));
        }
        let n_cells = raw.n_cells.ok_or_else(|| field_err("n_cells", "required"))?;
        if n_cells == 0 {
            return Err(field_err("n_cells", "must be positive"));
        }
        let t_end = raw.t_end.ok_or_else(|| field_err("t_end", "required"))?;
        if !(t_end >= 0.0) {
            return Err(field_err("t_end", "must be nonnegative"));
        }
        let [x_left, x_right] = raw.domain.unwrap_or([-1.5, 1.5]);
        if !(x_right > x_left) {
            return Err(field_err("domain", "needs x_left < x_right"));
        }
        let degree = raw.k.unwrap_or(0);
        if degree > 2 {
            return Err(field_err("k", "supported degrees are 0, 1, 2"));
        }
        let flux_kind = FluxKind::parse(raw.flux.as_deref().unwrap_or("lax_friedrichs"))
            .map_err(|e| field_err("flux", e.to_string()))?;
        let scheme_kind = SchemeKind::parse(raw.scheme.as_deref().unwrap_or("explicit_fv"))
            .map_err(|e| field_err("scheme", e.to_string()))?;
        if matches!(scheme_kind, SchemeKind::ExplicitFv | SchemeKind::ImexFv) && degree != 0 {
            return Err(field_err(
                "k",
                format!("{} requires k = 0, got k = {degree}", scheme_kind.name()),
            ));
        }
        if scheme_kind == SchemeKind::ImexFv && equation == EquationKind::PureFractional {
            return Err(field_err(
                "scheme",
                "imex_fv needs a nonconstant physical flux; use explicit_fv or dg_rk3",
            ));
        }
        if flux_kind == FluxKind::LinearUpwind && equation == EquationKind::Burgers {
            return Err(field_err("flux", "linear_upwind requires a linear equation"));
        }
        let boundary = match raw.boundary.as_deref().unwrap_or("zero") {
            "zero" => BoundaryMode::ZeroExtension,
            "periodic" => BoundaryMode::Periodic,
            other => {
                return Err(field_err("boundary", format!("`{other}` is not `zero` or `periodic`")));
            }
        };
        let cfl_safety = raw.cfl_safety.unwrap_or(0.9);
        if !(cfl_safety > 0.0 && cfl_safety <= 1.0) {
            return Err(field_err("cfl_safety", "must lie in (0, 1]"));
        }
        let snapshot_times = raw.snapshot_times.unwrap_or_default();
        if snapshot_times.iter().any(|&t| !(0.0..=t_end).contains(&t)) {
            return Err(field_err("snapshot_times", "must lie in [0, t_end]"));
        }
        let gaussian_sigma = raw.gaussian_sigma.unwrap_or(0.25);
        let u0_name = raw.u0.unwrap_or_else(|| "hat".to_string());
        // fail early on unknown presets
        InitialData::preset(&u0_name, gaussian_sigma)
            .map_err(|e| field_err("u0", e.to_string()))?;
        Ok(RunConfig {
            equation,
            lambda,
            x_left,
            x_right,
            n_cells,
            degree,
            flux_kind,
            scheme_kind,
            boundary,
            cfl_safety,
            t_end,
            snapshot_times,
            u0_name,
            gaussian_sigma,
            limiter_m: raw.limiter_m.unwrap_or(0.0),
            output_dir: raw.output_dir.unwrap_or_else(|| "out".to_string()),
            m_trunc: raw.m_trunc,
        })
    }

    pub fn initial_data(&self) -> InitialData {
        InitialData::preset(&self.u0_name, self.gaussian_sigma).expect("validated at resolve time")
    }

    /// The solver-side configuration for this run.
    pub fn scheme_config(&self) -> Result<SchemeConfig, ConfigError> {
        let u0 = self.initial_data();
        let flux = FluxSpec::new(self.flux_kind, self.equation.physical_flux(), u0.sup_norm)
            .map_err(|e| field_err("flux", e.to_string()))?;
        Ok(SchemeConfig {
            kind: self.scheme_kind,
            degree: self.degree,
            lambda: self.lambda,
            flux,
            cfl_safety: self.cfl_safety,
            t_end: self.t_end,
            limiter_m: self.limiter_m,
            boundary: self.boundary,
            m_trunc: self.m_trunc,
        })
    }
}
