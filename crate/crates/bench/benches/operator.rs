//! Dense vs FFT application of the discrete fractional Laplacian, and the
//! implicit Toeplitz solve.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fraclaw_bench::wiggle;
use fraclaw_core::boundary::BoundaryMode;
use fraclaw_core::fractional::apply::ToeplitzOperator;
use fraclaw_core::fractional::implicit::solve_implicit;
use fraclaw_core::fractional::stencil::FracStencil;
use std::hint::black_box;

fn bench_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("toeplitz_apply");
    for &n in &[256usize, 1024, 4096] {
        let st = FracStencil::build(0.5, 1.0 / n as f64, n).unwrap();
        let op = ToeplitzOperator::new(&st, n, BoundaryMode::ZeroExtension).unwrap();
        let u = wiggle(n);
        group.bench_with_input(BenchmarkId::new("dense", n), &n, |b, _| {
            b.iter(|| op.apply_dense(black_box(&u)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fft", n), &n, |b, _| {
            b.iter(|| op.apply(black_box(&u)).unwrap())
        });
    }
    group.finish();
}

fn bench_implicit(c: &mut Criterion) {
    let mut group = c.benchmark_group("implicit_solve");
    for &n in &[512usize, 2048] {
        let st = FracStencil::build(0.5, 1.0 / n as f64, n).unwrap();
        let op = ToeplitzOperator::new(&st, n, BoundaryMode::Periodic).unwrap();
        let rhs = wiggle(n);
        let dt = 0.9 / (2.0 * n as f64); // convective-CFL-sized step
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_implicit(&op, black_box(dt), black_box(&rhs)).unwrap())
        });
    }
    group.finish();
}

fn bench_stencil_build(c: &mut Criterion) {
    c.bench_function("stencil_build_4096", |b| {
        b.iter(|| FracStencil::build(black_box(0.5), 1.0 / 4096.0, 4096).unwrap())
    });
}

criterion_group!(benches, bench_apply, bench_implicit, bench_stencil_build);
criterion_main!(benches);
