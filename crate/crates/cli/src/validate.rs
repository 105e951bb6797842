//! Property smoke suite behind `fraclaw validate`: fast machine checks of
//! the operator identities and the scheme contracts, printing one line per
//! check.

use fraclaw_core::boundary::BoundaryMode;
use fraclaw_core::flux::{FluxKind, FluxSpec, PhysicalFlux};
use fraclaw_core::fractional::apply::ToeplitzOperator;
use fraclaw_core::fractional::implicit::solve_implicit;
use fraclaw_core::fractional::stencil::FracStencil;
use fraclaw_core::grid::GridSpec;
use fraclaw_core::scheme::{SchemeConfig, SchemeKind, Solver};

pub struct CheckReport {
    pub passed: usize,
    pub failed: usize,
}

fn check(report: &mut CheckReport, name: &str, ok: bool, detail: String) {
    if ok {
        report.passed += 1;
        println!("[PASS] {name}: {detail}");
    } else {
        report.failed += 1;
        println!("[FAIL] {name}: {detail}");
    }
}

/// Runs the smoke checks; returns the tally.
pub fn run_smoke_suite(lambda: f64) -> CheckReport {
    let mut report = CheckReport { passed: 0, failed: 0 };
    let dx = 1.0 / 64.0;
    let n = 96;

    let st = match FracStencil::build(lambda, dx, 512) {
        Ok(st) => st,
        Err(e) => {
            check(&mut report, "stencil build", false, e.to_string());
            return report;
        }
    };
    let defect = st.row_sum_defect().abs();
    check(
        &mut report,
        "stencil row sum with analytic tail",
        defect <= 1e-12 * st.g0.abs(),
        format!("defect {defect:.3e}"),
    );
    let positive = (1..=512).all(|m| st.weight(m as isize) > 0.0);
    check(&mut report, "off-diagonal weights positive", positive, "m = 1..=512".into());

    let op = ToeplitzOperator::new(&st, n, BoundaryMode::Periodic).unwrap();
    let constant = vec![1.0; n];
    let resid = op
        .apply(&constant)
        .map(|v| v.iter().fold(0.0_f64, |a, &x| a.max(x.abs())))
        .unwrap_or(f64::INFINITY);
    check(
        &mut report,
        "periodic operator annihilates constants",
        resid <= 1e-10 * st.g0.abs() / dx,
        format!("residual {resid:.3e}"),
    );

    // dense and FFT paths agree
    let u: Vec<f64> = (0..n).map(|i| ((i * 37 % 17) as f64 - 8.0) / 8.0).collect();
    let a = op.apply(&u).unwrap();
    let b = op.apply_dense(&u).unwrap();
    let diff = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    check(&mut report, "dense vs FFT product", diff <= 1e-11, format!("max diff {diff:.3e}"));

    // implicit solve contracts
    let v = solve_implicit(&op, 0.01, &u).unwrap();
    let gu = op.apply(&v).unwrap();
    let res = v
        .iter()
        .zip(&gu)
        .zip(&u)
        .map(|((vi, gi), hi)| (vi - 0.01 * gi - hi).abs())
        .fold(0.0, f64::max);
    let (hmin, hmax) =
        u.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let bounds_ok = v.iter().all(|&x| x >= hmin - 1e-12 && x <= hmax + 1e-12);
    check(&mut report, "implicit solve residual", res <= 1e-10, format!("residual {res:.3e}"));
    check(&mut report, "implicit solve max principle", bounds_ok, format!("range [{hmin:.3}, {hmax:.3}]"));

    // one monotone step preserves bounds and mass (periodic proxy)
    let flux = FluxSpec::new(FluxKind::LaxFriedrichs, PhysicalFlux::Burgers, 1.0).unwrap();
    let cfg = SchemeConfig {
        kind: SchemeKind::ExplicitFv,
        degree: 0,
        lambda,
        flux,
        cfl_safety: 0.9,
        t_end: 0.1,
        limiter_m: 0.0,
        boundary: BoundaryMode::Periodic,
        m_trunc: None,
    };
    let grid = GridSpec::new(-0.75, 0.75, n).unwrap();
    let solver = Solver::new(cfg, grid).unwrap();
    let dt = solver.cfl_dt().unwrap();
    let next = solver.step_explicit_fv(&u, dt).unwrap();
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for &x in &u {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    let in_bounds = next.iter().all(|&x| x >= lo - 1e-12 && x <= hi + 1e-12);
    check(&mut report, "explicit step bounds", in_bounds, format!("box [{lo:.3}, {hi:.3}]"));
    let m0: f64 = u.iter().sum();
    let m1: f64 = next.iter().sum();
    check(
        &mut report,
        "explicit step conservation (periodic)",
        (m0 - m1).abs() <= 1e-11 * m0.abs().max(1.0),
        format!("drift {:.3e}", (m0 - m1).abs()),
    );

    report
}
