//! Player-A strategies.

pub mod barb;
pub mod combined;
pub mod halving;
pub mod middling;

use crate::game::{Board, GameKind, PointId, Rules};
use crate::strategy::{require, AStrategy, StrategyError};

pub use barb::{min_barb_width, Barb, BarbLevel, WBarbEvent, WBarbMode};
pub use combined::{combined_f, combined_guarantee, combined_t, CombinedA, CombinedPhase};
pub use halving::{halving_guarantee, HalvingA};
pub use middling::{Deviation, MiddlingEvent, MiddlingMode};

/// The Middling mode played for a whole `A(m,3)` game, never exiting.
#[derive(Debug, Clone)]
pub struct MiddlingA {
    mode: MiddlingMode,
}

impl MiddlingA {
    pub fn new(rules: &Rules) -> Result<Self, StrategyError> {
        require("a:middling", rules, GameKind::A, Some(3))?;
        Ok(MiddlingA {
            mode: MiddlingMode::endless(),
        })
    }

    pub fn mode(&self) -> &MiddlingMode {
        &self.mode
    }
}

impl AStrategy for MiddlingA {
    fn id(&self) -> String {
        "a:middling".into()
    }

    fn next_column(&mut self, board: &Board) -> Result<usize, StrategyError> {
        Ok(self.mode.next_column(board))
    }

    fn observe(&mut self, board: &Board, point: PointId) -> Result<(), StrategyError> {
        self.mode.observe(board, point).map(|_| ())
    }

    fn clone_box(&self) -> Box<dyn AStrategy> {
        Box::new(self.clone())
    }
}
