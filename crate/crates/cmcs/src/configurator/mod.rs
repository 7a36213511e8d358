//! Offline configurator. Enumerates meaningful component subsets, learns a
//! transition matrix pair per subset with a (25+25)-child evolutionary
//! search over deterministic seed matrices, and picks the winner on a
//! held-out validation set. Strategy C is configured in three alternating
//! stages over ordered subset pairs.

mod mutation;
mod planner;
mod search;
mod subsets;

pub use mutation::{
    draw_operator_pair, mutate_configuration, mutate_matrix, random_deterministic_matrix,
    MatrixMutation,
};
pub use planner::{pair_count, plan, PlannedStrategy, TrainingPlan};
pub use search::{
    evaluate_configuration, Candidate, Configurator, ConfiguratorResult, GenerationLog,
    LeaderboardEntry, MatrixSearchOutcome, MatrixSearchTarget, Scoring, SearchBudget,
    SingleStrategy, TrainingInstance, TrainingProtocol,
};
pub use subsets::enumerate_meaningful_subsets;

use crate::engine::EngineError;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ConfigureError {
    #[error("subset size {size} out of range for a pool of {pool} components")]
    SizeOutOfRange { size: usize, pool: usize },
    #[error("no meaningful subset of the requested size")]
    NoMeaningfulSubsets,
    #[error("no instances supplied")]
    NoInstances,
    #[error("no baseline entry for instance `{0}`")]
    MissingBaseline(String),
    #[error("baseline for `{0}` must be positive to score relative error")]
    NonPositiveBaseline(String),
    #[error("invalid protocol: {0}")]
    InvalidProtocol(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
