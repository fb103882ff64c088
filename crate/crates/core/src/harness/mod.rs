//! Running matches, adversaries for fixed strategies, bound verification
//! suites and transcripts.

pub mod adversary;
pub mod golden;
pub mod runner;
pub mod transcript;
pub mod verify;

use thiserror::Error;

use crate::game::GameError;
use crate::solver::SolveError;
use crate::strategy::{RegistryError, StrategyError};

pub use adversary::{
    exhaustive_vs_a, exhaustive_vs_b, random_vs_a, random_vs_b, Line, SearchLimits, WorstCase,
};
pub use golden::{middling_example, wbarb_example, GoldenCheck, GoldenTrace};
pub use runner::{default_max_turns, play_match, run_match, seeded_id, MatchReport};
pub use transcript::{Cause, MatchResult, Strategies, Transcript, TranscriptError};
pub use verify::{all_pass, line_transcript, verify_all, BoundReport, Relation, Suite};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Transcript(#[from] TranscriptError),
    #[error("contract violation after {line:?}: {message}")]
    Contract {
        message: String,
        line: Vec<[usize; 2]>,
    },
    #[error("search exceeded {0} nodes")]
    SearchBudget(u64),
}
