//! Library half of the experiment harness: configuration parsing and the
//! file outputs (snapshot CSVs, plot scripts, convergence tables). The
//! binary in `main.rs` is a thin clap wrapper over these.

pub mod config;
pub mod output;
pub mod validate;

pub use config::{EquationKind, RunConfig};

/// Process exit codes of the `fraclaw` binary.
pub mod exit_codes {
    pub const SUCCESS: i32 = 0;
    pub const CONFIG_ERROR: i32 = 2;
    pub const NUMERICAL_ERROR: i32 = 3;
}
