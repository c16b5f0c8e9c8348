//! Configuration-driven experiments: rate planning, single-point
//! simulations and ROP sweeps.

mod config;
mod plan;
mod simulate;
mod sweep;

pub use config::{DacConfig, Modulation, RunConfig, Shaping, SCHEMA_VERSION};
pub use plan::{cmd_plan, plan_row, PlanRow};
pub use simulate::{
    build_tx, channel_seed, cmd_simulate, prepare, simulate_point, write_dumps, PointResult, Prepared,
    Simulation, TxFrame,
};
pub use sweep::{cmd_sweep, worker_count, SweepOptions, SweepOutput, SweepSummary, WORKERS_ENV};

use thiserror::Error;

/// Error classes, each with its own process exit code.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("infeasible rate plan: {0}")]
    Infeasible(String),
    #[error("{stage} failed: {message}")]
    Simulation { stage: &'static str, message: String },
    #[error("I/O error: {0}")]
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Infeasible(_) => 3,
            RunError::Simulation { .. } => 4,
            RunError::Io(_) => 5,
        }
    }

    pub(crate) fn stage(stage: &'static str, err: impl std::fmt::Display) -> Self {
        RunError::Simulation { stage, message: err.to_string() }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

impl From<crate::metrics::MetricsError> for RunError {
    fn from(e: crate::metrics::MetricsError) -> Self {
        RunError::Io(e.to_string())
    }
}
