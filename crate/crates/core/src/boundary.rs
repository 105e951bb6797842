/// Treatment of values outside the computational window.
///
/// `ZeroExtension` sets the solution to zero outside the window, in both the
/// convective stencil and the nonlocal sum. `Periodic` wraps the window into
/// a torus; the nonlocal weights are then folded into an exact circulant with
/// zero row sums, which makes the discrete operator a faithful finite proxy
/// of the whole-line operator (constants are annihilated and mass is
/// conserved exactly).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    ZeroExtension,
    Periodic,
}

impl BoundaryMode {
    /// Looks up `values[i]` for a possibly out-of-window signed index.
    #[inline]
    pub fn get(self, values: &[f64], i: isize) -> f64 {
        let n = values.len() as isize;
        match self {
            BoundaryMode::ZeroExtension => {
                if i < 0 || i >= n {
                    0.0
                } else {
                    values[i as usize]
                }
            }
            BoundaryMode::Periodic => values[i.rem_euclid(n) as usize],
        }
    }
}
