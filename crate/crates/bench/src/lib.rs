//! Shared fixtures for the benchmark targets.

use fraclaw_core::boundary::BoundaryMode;
use fraclaw_core::flux::{FluxKind, FluxSpec, PhysicalFlux};
use fraclaw_core::scheme::{SchemeConfig, SchemeKind};

/// Lax-Friedrichs Burgers configuration on the unit box.
pub fn burgers_config(kind: SchemeKind, degree: usize, boundary: BoundaryMode) -> SchemeConfig {
    SchemeConfig {
        kind,
        degree,
        lambda: 0.5,
        flux: FluxSpec::new(FluxKind::LaxFriedrichs, PhysicalFlux::Burgers, 1.0)
            .expect("valid flux"),
        cfl_safety: 0.9,
        t_end: 0.1,
        limiter_m: 0.0,
        boundary,
        m_trunc: None,
    }
}

/// Deterministic pseudo-random state values in [-1, 1].
pub fn wiggle(n: usize) -> Vec<f64> {
    (0..n).map(|i| ((i * 2654435761) % 1000) as f64 / 500.0 - 1.0).collect()
}
