//! Full time steps: explicit and implicit-explicit finite volumes, and the
//! degree-1 DG right-hand side assembly.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fraclaw_bench::{burgers_config, wiggle};
use fraclaw_core::boundary::BoundaryMode;
use fraclaw_core::grid::GridSpec;
use fraclaw_core::project::project_l2;
use fraclaw_core::scheme::{SchemeKind, Solver};
use std::hint::black_box;

fn bench_fv_steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("fv_step");
    for &n in &[480usize, 1920] {
        let grid = GridSpec::new(-1.5, 1.5, n).unwrap();
        let explicit = Solver::new(
            burgers_config(SchemeKind::ExplicitFv, 0, BoundaryMode::ZeroExtension),
            grid.clone(),
        )
        .unwrap();
        let imex = Solver::new(
            burgers_config(SchemeKind::ImexFv, 0, BoundaryMode::ZeroExtension),
            grid.clone(),
        )
        .unwrap();
        let u = wiggle(n);
        let dt_ex = explicit.cfl_dt().unwrap();
        let dt_im = imex.cfl_dt().unwrap();
        group.bench_with_input(BenchmarkId::new("explicit", n), &n, |b, _| {
            b.iter(|| explicit.step_explicit_fv(black_box(&u), dt_ex).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("imex", n), &n, |b, _| {
            b.iter(|| imex.step_imex_fv(black_box(&u), dt_im).unwrap())
        });
    }
    group.finish();
}

fn bench_dg_rhs(c: &mut Criterion) {
    let mut group = c.benchmark_group("dg_rhs_k1");
    for &n in &[480usize, 1920] {
        let grid = GridSpec::new(-1.5, 1.5, n).unwrap();
        let solver = Solver::new(
            burgers_config(SchemeKind::DgRk3, 1, BoundaryMode::ZeroExtension),
            grid.clone(),
        )
        .unwrap();
        let state =
            project_l2(|x| (2.0 * std::f64::consts::PI * x).sin(), &[], &grid, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solver.dg_rhs(black_box(&state)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_fv_steps, bench_dg_rhs);
criterion_main!(benches);
