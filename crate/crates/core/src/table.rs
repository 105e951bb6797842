//! Grid-refinement error tables: absolute errors `E`, relative errors `R`
//! and observed convergence rates `α = (log E_{Δx} - log E_{Δx/2}) / log 2`
//! for `p ∈ {1, 2, ∞}`.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::norms::{error_norms, lp_norm, NormKind};
use crate::presets::InitialData;
use crate::scheme::{SchemeConfig, Solver};

/// One refinement level of a study.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub dx: f64,
    /// `E_{Δx,p}` for p = 1, 2, ∞.
    pub e: [f64; 3],
    /// Relative errors `E / ‖reference‖_p`.
    pub r: [f64; 3],
    /// Rates against the next (finer) row; absent on the last row.
    pub alpha: [Option<f64>; 3],
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
}

impl ErrorTable {
    /// Builds a table from per-level errors and the reference norms,
    /// computing rates between consecutive levels.
    pub fn from_errors(dxs: &[f64], errors: &[[f64; 3]], ref_norms: [f64; 3]) -> Self {
        let mut rows = Vec::with_capacity(dxs.len());
        for (lvl, (&dx, e)) in dxs.iter().zip(errors).enumerate() {
            let mut alpha = [None; 3];
            if lvl + 1 < errors.len() {
                for p in 0..3 {
                    let next = errors[lvl + 1][p];
                    if e[p] > 0.0 && next > 0.0 {
                        alpha[p] = Some((e[p].ln() - next.ln()) / std::f64::consts::LN_2);
                    }
                }
            }
            let r = [
                e[0] / ref_norms[0].max(f64::MIN_POSITIVE),
                e[1] / ref_norms[1].max(f64::MIN_POSITIVE),
                e[2] / ref_norms[2].max(f64::MIN_POSITIVE),
            ];
            rows.push(ErrorRow { dx, e: *e, r, alpha });
        }
        Self { rows }
    }

    /// Round-trip-safe CSV (shortest representation that parses back to the
    /// same bits; empty field for an absent rate).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dx,E1,R1,alpha1,E2,R2,alpha2,Einf,Rinf,alphainf\n");
        for row in &self.rows {
            out.push_str(&format!("{}", row.dx));
            for p in 0..3 {
                out.push_str(&format!(",{},{}", row.e[p], row.r[p]));
                match row.alpha[p] {
                    Some(a) => out.push_str(&format!(",{a}")),
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            if no == 0 || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 10 {
                return Err(Error::Parse(format!(
                    "line {}: expected 10 fields, got {}",
                    no + 1,
                    fields.len()
                )));
            }
            let num = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::Parse(format!("line {}: bad number `{s}`", no + 1)))
            };
            let opt = |s: &str| -> Result<Option<f64>> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    num(s).map(Some)
                }
            };
            rows.push(ErrorRow {
                dx: num(fields[0])?,
                e: [num(fields[1])?, num(fields[4])?, num(fields[7])?],
                r: [num(fields[2])?, num(fields[5])?, num(fields[8])?],
                alpha: [opt(fields[3])?, opt(fields[6])?, opt(fields[9])?],
            });
        }
        Ok(Self { rows })
    }

    /// Four-decimal display in the usual refinement-table layout.
    pub fn display(&self) -> String {
        let mut out = String::from(
            "      dx        E1      R1   alpha1        E2      R2   alpha2      Einf    Rinf alphainf\n",
        );
        for row in &self.rows {
            out.push_str(&format!("{:>8.5}", row.dx));
            for p in 0..3 {
                out.push_str(&format!("  {:>8.4} {:>7.4}", row.e[p], row.r[p]));
                match row.alpha[p] {
                    Some(a) => out.push_str(&format!("  {a:>7.4}")),
                    None => out.push_str("        -"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Rates of one norm (`p_index` 0, 1, 2 for L1, L2, L∞).
    pub fn alphas(&self, p_index: usize) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.alpha[p_index]).collect()
    }

    /// Least-squares slope of `log E` against `log dx` for one norm: the
    /// convergence order measured across the whole refinement range.
    pub fn fitted_order(&self, p_index: usize) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.e[p_index] > 0.0)
            .map(|r| (r.dx.ln(), r.e[p_index].ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
    }
}

/// Specification of a refinement study: the same scheme run over a halving
/// sequence of grids, with errors measured against a fine self-reference.
pub struct StudySpec {
    pub config: SchemeConfig,
    pub x_left: f64,
    pub x_right: f64,
    /// Coarse-to-fine halving sequence of cell counts.
    pub n_cells_list: Vec<usize>,
    /// Reference cell count; must be a multiple of every entry.
    pub ref_n_cells: usize,
    pub u0: InitialData,
}

/// Runs the study and assembles the error table.
pub fn convergence_study(spec: &StudySpec) -> Result<ErrorTable> {
    if spec.n_cells_list.is_empty() {
        return Err(Error::InvalidParameter("empty refinement list".into()));
    }
    for w in spec.n_cells_list.windows(2) {
        if w[1] != 2 * w[0] {
            return Err(Error::InvalidParameter(format!(
                "refinement list must halve dx at every level ({} then {})",
                w[0], w[1]
            )));
        }
    }
    if spec.n_cells_list.iter().any(|&n| spec.ref_n_cells % n != 0)
        || spec.ref_n_cells <= *spec.n_cells_list.last().unwrap()
    {
        return Err(Error::InvalidParameter(
            "reference grid must strictly refine every study grid".into(),
        ));
    }

    let ref_state = crate::reference::fine_grid_reference(
        &spec.config,
        &spec.u0,
        spec.x_left,
        spec.x_right,
        spec.ref_n_cells,
    )?;

    let ref_norms = [
        lp_norm(&ref_state, NormKind::L1),
        lp_norm(&ref_state, NormKind::L2),
        lp_norm(&ref_state, NormKind::LInf),
    ];

    let mut dxs = Vec::new();
    let mut errors = Vec::new();
    for &n in &spec.n_cells_list {
        let grid = GridSpec::new(spec.x_left, spec.x_right, n)?;
        let solver = Solver::new(spec.config.clone(), grid.clone())?;
        let mut traj = solver.run(&spec.u0, &[])?;
        let state = traj.states.pop().expect("trajectory never empty");
        dxs.push(grid.dx);
        errors.push(error_norms(&state, &ref_state)?);
    }
    Ok(ErrorTable::from_errors(&dxs, &errors, ref_norms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> ErrorTable {
        ErrorTable::from_errors(
            &[0.1, 0.05, 0.025],
            &[[0.4, 0.5, 0.6], [0.2, 0.26, 0.3], [0.1, 0.13, 0.16]],
            [2.0, 3.0, 1.0],
        )
    }

    #[test]
    fn alpha_of_halving_errors_is_one() {
        let t = sample_table();
        assert!((t.rows[0].alpha[0].unwrap() - 1.0).abs() < 1e-12);
        assert!(t.rows[2].alpha[0].is_none());
        assert!((t.rows[0].r[0] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn alpha_is_scale_free() {
        let dxs = [0.1, 0.05, 0.025];
        let errs = [[0.31, 0.2, 0.1], [0.11, 0.08, 0.05], [0.04, 0.03, 0.02]];
        let scaled: Vec<[f64; 3]> =
            errs.iter().map(|e| [7.0 * e[0], 7.0 * e[1], 7.0 * e[2]]).collect();
        let t1 = ErrorTable::from_errors(&dxs, &errs, [1.0; 3]);
        let t2 = ErrorTable::from_errors(&dxs, &scaled, [1.0; 3]);
        for (a, b) in t1.alphas(0).iter().zip(t2.alphas(0).iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let t = ErrorTable::from_errors(
            &[0.1, 0.05],
            &[[0.123456789012345678, 1e-17, 3.7], [0.3e-5, 5e-18, 1.85]],
            [std::f64::consts::PI, 1.0, 2.0],
        );
        let csv = t.to_csv();
        let back = ErrorTable::parse_csv(&csv).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn fitted_order_on_synthetic_data() {
        let dxs = [0.2_f64, 0.1, 0.05, 0.025];
        let errs: Vec<[f64; 3]> = dxs
            .iter()
            .map(|&dx| {
                let e = 3.0 * dx.powf(1.5);
                [e, e, e]
            })
            .collect();
        let t = ErrorTable::from_errors(&dxs, &errs, [1.0; 3]);
        assert!((t.fitted_order(0).unwrap() - 1.5).abs() < 1e-10);
    }

    #[test]
    fn malformed_csv_rejected() {
        assert!(ErrorTable::parse_csv("dx,E1\n0.1,2\n").is_err());
        assert!(
            ErrorTable::parse_csv("h\n0.1,a,b,c,d,e,f,g,h,i\n").is_err()
        );
    }
}
