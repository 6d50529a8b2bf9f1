//! Experiment plans: a grid of graph sizes and seeds, one CSV row per cell.

mod diagnostics;
mod plan;
mod runner;
mod summary;

pub use diagnostics::typical_vertex_fraction;
pub use plan::{ExperimentPlan, EXACT_DIAMETER_LIMIT};
pub use runner::{
    run_cell, run_plan, run_plan_with, side_path, DiameterKind, ExperimentRow, RunOptions,
    SCHEMA_VERSION, WORKERS_ENV,
};
pub use summary::{fit_inverse_log, MeanSd, SizeSummary, Summary, Trend};
