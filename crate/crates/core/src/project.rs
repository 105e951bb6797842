//! L² projection of initial data onto the broken Legendre space:
//! `U_{q,i} = (2q+1)/Δx ∫_{I_i} u0 φ_{q,i}`.

use crate::basis;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::quadrature::GaussRule;
use crate::state::PolyState;

/// Projects `u0` onto degree-`k` elements.
///
/// `breakpoints` lists interior points where `u0` is not smooth (kinks or
/// jumps); cells are split there and each smooth piece is integrated by a
/// Gauss rule with `k + 3` nodes, which is exact for the piecewise-polynomial
/// presets and far below round-off for smooth data.
pub fn project_l2<F: Fn(f64) -> f64>(
    u0: F,
    breakpoints: &[f64],
    grid: &GridSpec,
    k: usize,
) -> Result<PolyState> {
    let mut state = PolyState::zeros(grid.clone(), k)?;
    let rule = GaussRule::new(k + 3);
    for i in 0..grid.n_cells {
        let (a, b) = (grid.cell_left(i), grid.cell_right(i));
        // Split the cell at any breakpoints strictly inside it.
        let mut cuts: Vec<f64> = vec![a];
        for &bp in breakpoints {
            if bp > a && bp < b {
                cuts.push(bp);
            }
        }
        cuts.push(b);
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());

        for q in 0..=k {
            let mut moment = 0.0;
            for w in cuts.windows(2) {
                moment += rule.integrate(w[0], w[1], |x| {
                    u0(x) * basis::legendre(q, grid.to_reference(i, x))
                });
            }
            if !moment.is_finite() {
                return Err(Error::NonFinite { time: 0.0, cell: i, value: moment });
            }
            *state.coeff_mut(q, i) = (2.0 * q as f64 + 1.0) / grid.dx * moment;
        }
    }
    Ok(state)
}
