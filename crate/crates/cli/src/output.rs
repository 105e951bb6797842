//! File outputs: per-snapshot CSVs with sub-cell sample points, a gnuplot
//! script referencing them, and convergence-table CSVs.

use crate::config::RunConfig;
use fraclaw_core::scheme::Trajectory;
use fraclaw_core::state::PolyState;
use fraclaw_core::table::ErrorTable;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Sample points per cell: one at the center for piecewise constants, a few
/// interior points for higher degrees so kinks and jumps are visible.
fn samples_per_cell(degree: usize) -> usize {
    match degree {
        0 => 1,
        1 => 3,
        _ => 5,
    }
}

/// Writes one CSV per snapshot and returns the file paths.
pub fn emit_snapshots(
    traj: &Trajectory,
    cfg: &RunConfig,
) -> std::io::Result<Vec<PathBuf>> {
    let dir = Path::new(&cfg.output_dir);
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let path = dir.join(format!("snapshot_t{t:.6}.csv"));
        let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(out, "x,u")?;
        write_state_rows(&mut out, state)?;
        out.flush()?;
        files.push(path);
    }
    if !files.is_empty() {
        let script = plot_script(&files, cfg);
        std::fs::write(dir.join("plot.gp"), script)?;
    }
    Ok(files)
}

fn write_state_rows<W: Write>(out: &mut W, state: &PolyState) -> std::io::Result<()> {
    let ns = samples_per_cell(state.degree);
    for i in 0..state.n_cells() {
        for s in 0..ns {
            let xi = -1.0 + 2.0 * (s as f64 + 0.5) / ns as f64;
            let x = state.grid.from_reference(i, xi);
            writeln!(out, "{},{}", x, state.eval_in_cell(i, xi))?;
        }
    }
    Ok(())
}

fn plot_script(files: &[PathBuf], cfg: &RunConfig) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key top right\n");
    s.push_str(&format!("set xlabel 'x'\nset ylabel 'u'\nset title 'u0 = {}'\n", cfg.u0_name));
    s.push_str("plot \\\n");
    let lines: Vec<String> = files
        .iter()
        .map(|f| {
            let name = f.file_name().unwrap().to_string_lossy().into_owned();
            format!("  '{name}' using 1:2 with lines title '{name}'")
        })
        .collect();
    s.push_str(&lines.join(", \\\n"));
    s.push('\n');
    s
}

/// Writes a convergence table as CSV and returns the path.
pub fn emit_table(table: &ErrorTable, dir: &str, name: &str) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = Path::new(dir).join(name);
    std::fs::write(&path, table.to_csv())?;
    Ok(path)
}
