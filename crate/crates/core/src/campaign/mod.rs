//! The 5×5 scenario campaign, cross-evaluation and D1/D2 report.

mod cross;
mod evaluator;
mod report;
mod runner;
mod scenarios;

use std::path::PathBuf;

pub use cross::{cross_evaluate, CrossEvalMatrix, DIAGONAL_TOL, MATRIX_HEADER};
pub use evaluator::{Evaluator, EvaluatorKind};
pub use report::{
    compare_d1_d2, long_csv, profiles_csv, report, ComparisonRow, D1D2Comparison, ReportSummary,
    Winner, COMPARISON_FILE, LONG_FILE, MATRIX_FILE, PROFILES_FILE, PROFILE_SAMPLES, SUMMARY_FILE,
    VIOLATION_MARGIN,
};
pub use runner::{
    load_campaign, persist_run, run_campaign, run_campaign_with_progress, run_scenario,
    scenario_dir, CampaignConfig, CampaignMeta, CampaignResult, RunSettings, ScenarioEntry,
    ScenarioResult, METADATA_FILE, MIN_BUDGET, N_INIT, OPTIMAL_FILE, TRACE_FILE,
};
pub use scenarios::{
    scenario_label, scenario_matrix, D1_SCENARIO, D2_SCENARIO, INTENSITIES, N_SCENARIOS, VELOCITIES,
};

use crate::bo::BoError;

#[derive(Debug, thiserror::Error)]
pub enum CampaignError {
    #[error("invalid campaign config: {0}")]
    Config(String),
    #[error("scenario {index} ({label}): {source}")]
    Scenario {
        index: usize,
        label: String,
        #[source]
        source: BoError,
    },
    #[error("scenario {index} ({label}) has not completed")]
    Incomplete { index: usize, label: String },
    #[error("{}: existing campaign was run with different settings", .0.display())]
    MetadataMismatch(PathBuf),
    #[error("{}: {message}", path.display())]
    Corrupt { path: PathBuf, message: String },
    #[error("evaluating the optimum of scenario {index}: {message}")]
    Evaluation { index: usize, message: String },
    #[error("scenario {index}: recomputed optimum {recomputed} differs from recorded {recorded}")]
    Diagonal {
        index: usize,
        recorded: f64,
        recomputed: f64,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
