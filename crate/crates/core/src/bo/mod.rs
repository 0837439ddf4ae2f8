//! Sequential Bayesian optimization with a GP surrogate and the lower
//! confidence bound acquisition.

mod acquisition;
mod lhs;
mod optimize;
mod propose;
mod trace;

pub use acquisition::{beta_schedule, lcb};
pub use lhs::latin_hypercube;
pub use optimize::{optimize, BoConfig, ObjectiveError, FAILURE_SENTINEL};
pub use propose::{propose_next, Proposal, ProposalSettings};
pub use trace::{average_regret, regret, Regret, Trace, TraceParseError, TraceRecord};

use crate::gp::GpError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum BoError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("every initial evaluation failed: {}", .0.join("; "))]
    AllInitialFailed(Vec<String>),
    #[error("{0}")]
    Aborted(String),
    #[error("surrogate fit failed: {0}")]
    Surrogate(#[from] GpError),
}
