//! `fraclaw` — experiment harness for 1D fractal conservation laws
//! `∂t u + ∂x f(u) = g_λ[u]`.

use clap::{Args, Parser, Subcommand};
use fraclaw_cli::config::{RawConfig, RunConfig};
use fraclaw_cli::{exit_codes, output, validate};
use fraclaw_core::grid::GridSpec;
use fraclaw_core::norms::{lp_norm, NormKind};
use fraclaw_core::scheme::Solver;
use fraclaw_core::table::{convergence_study, StudySpec};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fraclaw", version, about = "Solvers for 1D fractal conservation laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single simulation and write snapshot CSVs plus a plot script.
    Run(RunArgs),
    /// Grid-refinement study: errors and rates against a fine self-reference.
    Convergence(ConvergenceArgs),
    /// Fast property smoke suite (operator identities, scheme contracts).
    Validate(ValidateArgs),
}

/// Flags mirror the config file; set flags override file values.
#[derive(Args, Clone, Default)]
struct ConfigArgs {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Equation: pure_fractional | linear_transport | burgers.
    #[arg(long)]
    equation: Option<String>,
    /// Fractional order λ in (0,1).
    #[arg(long)]
    lambda: Option<f64>,
    /// Number of cells.
    #[arg(long)]
    n_cells: Option<usize>,
    /// Final time.
    #[arg(long)]
    t_end: Option<f64>,
    /// Transport speed (linear_transport only).
    #[arg(long)]
    c: Option<f64>,
    /// Domain bounds, e.g. --domain=-1.5,1.5.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    domain: Option<Vec<f64>>,
    /// Element degree 0..=2.
    #[arg(long)]
    k: Option<usize>,
    /// Flux: lax_friedrichs | engquist_osher | godunov | linear_upwind.
    #[arg(long)]
    flux: Option<String>,
    /// Scheme: explicit_fv | imex_fv | dg_rk3.
    #[arg(long)]
    scheme: Option<String>,
    /// Boundary treatment: zero | periodic.
    #[arg(long)]
    boundary: Option<String>,
    /// CFL safety factor in (0,1].
    #[arg(long)]
    cfl_safety: Option<f64>,
    /// Snapshot times, comma separated.
    #[arg(long, value_delimiter = ',')]
    snapshot_times: Option<Vec<f64>>,
    /// Initial datum preset: sgn | arctan | sgn_hat | sin2pi | hat | gaussian.
    #[arg(long)]
    u0: Option<String>,
    /// Width of the gaussian preset.
    #[arg(long)]
    gaussian_sigma: Option<f64>,
    /// TVB limiter parameter M.
    #[arg(long)]
    limiter_m: Option<f64>,
    /// Output directory.
    #[arg(long)]
    output_dir: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    cfg: ConfigArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    cfg: ConfigArgs,
    /// Halving sequence of cell counts, e.g. 30,60,120,240.
    #[arg(long, value_delimiter = ',', required = true)]
    cells: Vec<usize>,
    /// Reference cell count (must refine every study grid).
    #[arg(long, required = true)]
    ref_cells: usize,
}

#[derive(Args)]
struct ValidateArgs {
    /// Fractional order to exercise.
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
}

impl ConfigArgs {
    fn overrides(&self) -> Result<RawConfig, String> {
        let domain = match &self.domain {
            None => None,
            Some(v) if v.len() == 2 => Some([v[0], v[1]]),
            Some(_) => return Err("--domain needs exactly two values".into()),
        };
        Ok(RawConfig {
            equation: self.equation.clone(),
            lambda: self.lambda,
            n_cells: self.n_cells,
            t_end: self.t_end,
            c: self.c,
            domain,
            k: self.k,
            flux: self.flux.clone(),
            scheme: self.scheme.clone(),
            boundary: self.boundary.clone(),
            cfl_safety: self.cfl_safety,
            snapshot_times: self.snapshot_times.clone(),
            u0: self.u0.clone(),
            gaussian_sigma: self.gaussian_sigma,
            limiter_m: self.limiter_m,
            output_dir: self.output_dir.clone(),
            m_trunc: None,
        })
    }

    fn resolve(&self) -> Result<RunConfig, (i32, String)> {
        let base = match &self.config {
            Some(path) => RawConfig::from_path(path)
                .map_err(|e| (exit_codes::CONFIG_ERROR, e.to_string()))?,
            None => RawConfig::default(),
        };
        let over = self.overrides().map_err(|e| (exit_codes::CONFIG_ERROR, e))?;
        RunConfig::resolve(base.merged(over)).map_err(|e| (exit_codes::CONFIG_ERROR, e.to_string()))
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), (i32, String)> {
    let cfg = args.cfg.resolve()?;
    let grid = GridSpec::new(cfg.x_left, cfg.x_right, cfg.n_cells)
        .map_err(|e| (exit_codes::CONFIG_ERROR, e.to_string()))?;
    let scheme_cfg = cfg.scheme_config().map_err(|e| (exit_codes::CONFIG_ERROR, e.to_string()))?;
    let solver = Solver::new(scheme_cfg, grid)
        .map_err(|e| (exit_codes::CONFIG_ERROR, e.to_string()))?;
    let traj = solver
        .run(&cfg.initial_data(), &cfg.snapshot_times)
        .map_err(|e| (exit_codes::NUMERICAL_ERROR, e.to_string()))?;
    let files =
        output::emit_snapshots(&traj, &cfg).map_err(|e| (exit_codes::NUMERICAL_ERROR, e.to_string()))?;
    let last = traj.last();
    println!(
        "{} on {} cells to t = {}: L1 = {:.6}, L2 = {:.6}, Linf = {:.6}, BV = {:.6}",
        cfg.scheme_kind.name(),
        cfg.n_cells,
        cfg.t_end,
        lp_norm(last, NormKind::L1),
        lp_norm(last, NormKind::L2),
        lp_norm(last, NormKind::LInf),
        lp_norm(last, NormKind::Bv),
    );
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn cmd_convergence(args: &ConvergenceArgs) -> Result<(), (i32, String)> {
    let cfg = args.cfg.resolve()?;
    let spec = StudySpec {
        config: cfg.scheme_config().map_err(|e| (exit_codes::CONFIG_ERROR, e.to_string()))?,
        x_left: cfg.x_left,
        x_right: cfg.x_right,
        n_cells_list: args.cells.clone(),
        ref_n_cells: args.ref_cells,
        u0: cfg.initial_data(),
    };
    let table = convergence_study(&spec).map_err(|e| match e {
        fraclaw_core::Error::InvalidParameter(_) => (exit_codes::CONFIG_ERROR, e.to_string()),
        other => (exit_codes::NUMERICAL_ERROR, other.to_string()),
    })?;
    println!("{}", table.display());
    let path = output::emit_table(&table, &cfg.output_dir, "convergence.csv")
        .map_err(|e| (exit_codes::NUMERICAL_ERROR, e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::Validate(args) => {
            if !(args.lambda > 0.0 && args.lambda < 1.0) {
                eprintln!("error: lambda must lie in (0,1)");
                return ExitCode::from(exit_codes::CONFIG_ERROR as u8);
            }
            let report = validate::run_smoke_suite(args.lambda);
            println!("{} passed, {} failed", report.passed, report.failed);
            if report.failed > 0 {
                return ExitCode::from(exit_codes::NUMERICAL_ERROR as u8);
            }
            return ExitCode::SUCCESS;
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
