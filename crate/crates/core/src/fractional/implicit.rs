//! Implicit diffusion step: solves `v - Δt g⟨v⟩ = h`.
//!
//! The system matrix `A = I - Δt·(1/Δx) G` is symmetric positive definite
//! with positive diagonal, nonpositive off-diagonal and strict diagonal
//! dominance, so damped-free Jacobi contracts with factor `q/(1+q)`,
//! `q = -Δt G_0/Δx`. When the diffusion number `q` is large (pure-fractional
//! runs with big steps) Jacobi stalls and conjugate gradients take over.

use super::apply::ToeplitzOperator;
use crate::error::{Error, Result};

/// Default relative residual target. The step contract is `1e-10`; solving
/// deeper costs a few extra matvecs and keeps the min/max and ℓ¹ bounds of
/// the exact solution intact at the `1e-12` level.
pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_ITER: usize = 50_000;

/// Solves `v - Δt g⟨v⟩ = rhs` to the default tolerance.
pub fn solve_implicit(op: &ToeplitzOperator, dt: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    solve_implicit_with(op, dt, rhs, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// Solves `v - Δt g⟨v⟩ = rhs` with an explicit relative residual tolerance
/// and iteration cap.
pub fn solve_implicit_with(
    op: &ToeplitzOperator,
    dt: f64,
    rhs: &[f64],
    tol_rel: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if rhs.len() != op.n {
        return Err(Error::SizeMismatch { expected: op.n, actual: rhs.len() });
    }
    let rhs_inf = rhs.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
    if rhs_inf == 0.0 {
        return Ok(vec![0.0; op.n]);
    }
    let tol = tol_rel * rhs_inf;
    let q = -dt * op.diag; // contraction number of Jacobi
    if q <= 8.0 {
        jacobi(op, dt, rhs, tol, max_iter)
    } else {
        conjugate_gradient(op, dt, rhs, tol, max_iter)
    }
}

fn residual_inf(op: &ToeplitzOperator, dt: f64, v: &[f64], rhs: &[f64]) -> Result<f64> {
    let gv = op.apply(v)?;
    Ok(v.iter()
        .zip(&gv)
        .zip(rhs)
        .map(|((vi, gvi), hi)| (vi - dt * gvi - hi).abs())
        .fold(0.0, f64::max))
}

fn jacobi(
    op: &ToeplitzOperator,
    dt: f64,
    rhs: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    let a_diag = 1.0 - dt * op.diag;
    let mut v = rhs.to_vec();
    let mut res = f64::INFINITY;
    for _it in 0..max_iter {
        let gv = op.apply(&v)?;
        // v_new = (rhs + Δt (g⟨v⟩ - diag·v)) / (1 - Δt·diag)
        let mut new_res = 0.0_f64;
        let mut next = Vec::with_capacity(v.len());
        for i in 0..v.len() {
            let vi = (rhs[i] + dt * (gv[i] - op.diag * v[i])) / a_diag;
            new_res = new_res.max((v[i] - dt * gv[i] - rhs[i]).abs());
            next.push(vi);
        }
        res = new_res;
        if res <= tol {
            return Ok(v);
        }
        v = next;
    }
    Err(Error::SolverDiverged { iterations: max_iter, residual: res })
}

fn conjugate_gradient(
    op: &ToeplitzOperator,
    dt: f64,
    rhs: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    let n = rhs.len();
    let apply_a = |v: &[f64]| -> Result<Vec<f64>> {
        let gv = op.apply(v)?;
        Ok(v.iter().zip(&gv).map(|(vi, gvi)| vi - dt * gvi).collect())
    };
    let mut v = rhs.to_vec();
    let av = apply_a(&v)?;
    let mut r: Vec<f64> = rhs.iter().zip(&av).map(|(b, a)| b - a).collect();
    let mut p = r.clone();
    let mut rs: f64 = r.iter().map(|x| x * x).sum();
    for _it in 0..max_iter {
        let rinf = r.iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
        if rinf <= tol {
            return Ok(v);
        }
        let ap = apply_a(&p)?;
        let alpha = rs / p.iter().zip(&ap).map(|(x, y)| x * y).sum::<f64>();
        for i in 0..n {
            v[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rs_new: f64 = r.iter().map(|x| x * x).sum();
        let beta = rs_new / rs;
        rs = rs_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    let res = residual_inf(op, dt, &v, rhs)?;
    Err(Error::SolverDiverged { iterations: max_iter, residual: res })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryMode;
    use crate::fractional::stencil::FracStencil;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn operator(n: usize, mode: BoundaryMode) -> ToeplitzOperator {
        let st = FracStencil::build(0.5, 0.05, n).unwrap();
        ToeplitzOperator::new(&st, n, mode).unwrap()
    }

    #[test]
    fn residual_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for mode in [BoundaryMode::ZeroExtension, BoundaryMode::Periodic] {
            let op = operator(40, mode);
            let rhs: Vec<f64> = (0..40).map(|_| rng.random_range(-2.0..2.0)).collect();
            let dt = 0.01;
            let v = solve_implicit(&op, dt, &rhs).unwrap();
            let res = residual_inf(&op, dt, &v, &rhs).unwrap();
            let h_inf = rhs.iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
            assert!(res <= 1e-10 * h_inf, "{mode:?}: residual {res:.3e}");
        }
    }

    #[test]
    fn constant_rhs_is_fixed_point_periodic() {
        let op = operator(32, BoundaryMode::Periodic);
        let rhs = vec![0.8; 32];
        let v = solve_implicit(&op, 0.5, &rhs).unwrap();
        for x in v {
            assert!((x - 0.8).abs() < 1e-10);
        }
    }

    #[test]
    fn maximum_principle_and_l1_contraction_periodic() {
        // with zero row sums the bounds inf h ≤ v ≤ sup h and Σ|v| ≤ Σ|h|
        // hold for arbitrary sign patterns
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let op = operator(56, BoundaryMode::Periodic);
        for trial in 0..20 {
            let shift = rng.random_range(-1.0..1.0);
            let rhs: Vec<f64> =
                (0..56).map(|_| rng.random_range(-1.0..1.0) + shift).collect();
            let v = solve_implicit(&op, 0.3, &rhs).unwrap();
            let (hmin, hmax) = rhs.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
            for &x in &v {
                assert!(x >= hmin - 1e-12 && x <= hmax + 1e-12, "trial {trial}");
            }
            let l1v: f64 = v.iter().map(|x| x.abs()).sum();
            let l1h: f64 = rhs.iter().map(|x| x.abs()).sum();
            assert!(l1v <= l1h + 1e-12 * l1h.max(1.0), "trial {trial}");
        }
    }

    #[test]
    fn zero_extension_bounds_toward_zero() {
        // with zero extension the truncated rows lose mass, so the two-sided
        // bound holds in the zero-inclusive form min(h,0) ≤ v ≤ max(h,0)
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let op = operator(48, BoundaryMode::ZeroExtension);
        for _ in 0..20 {
            let rhs: Vec<f64> = (0..48).map(|_| rng.random_range(-1.0..0.0)).collect();
            let v = solve_implicit(&op, 0.4, &rhs).unwrap();
            let hmin = rhs.iter().cloned().fold(f64::MAX, f64::min);
            for &x in &v {
                assert!(x >= hmin.min(0.0) - 1e-12 && x <= 1e-12);
            }
            let l1v: f64 = v.iter().map(|x| x.abs()).sum();
            let l1h: f64 = rhs.iter().map(|x| x.abs()).sum();
            assert!(l1v <= l1h * (1.0 + 1e-12));
        }
    }

    #[test]
    fn big_diffusion_number_falls_back_to_cg() {
        // dt large enough that q = -dt·diag/… > 8 exercises the CG branch
        let op = operator(64, BoundaryMode::Periodic);
        let dt = 10.0 / -op.diag * 1.0;
        assert!(-dt * op.diag > 8.0);
        let rhs: Vec<f64> = (0..64).map(|i| ((i as f64) * 0.3).sin()).collect();
        let v = solve_implicit(&op, dt, &rhs).unwrap();
        let res = residual_inf(&op, dt, &v, &rhs).unwrap();
        assert!(res <= 1e-10);
    }

    #[test]
    fn zero_dt_rejected_and_cap_reported() {
        let op = operator(8, BoundaryMode::ZeroExtension);
        assert!(solve_implicit(&op, 0.0, &[1.0; 8]).is_err());
        let err = solve_implicit_with(&op, 0.5, &[1.0; 8], 1e-30, 2).unwrap_err();
        assert!(matches!(err, Error::SolverDiverged { .. }));
    }
}
