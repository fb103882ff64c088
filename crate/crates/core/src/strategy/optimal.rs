//! Solver-backed optimal play for either side.
//!
//! Clones share one memo table: every entry is a proven bound, so sharing
//! it between branches of an exhaustive search is sound.

use std::sync::{Arc, Mutex};

use crate::game::{Board, PointId, Rules};
use crate::solver::{Budget, Solver};
use crate::strategy::{AStrategy, BStrategy, StrategyError};

fn shared(rules: Rules) -> Arc<Mutex<Solver>> {
    Arc::new(Mutex::new(Solver::new(rules)))
}

/// Plays the smallest column achieving the minimax value.
#[derive(Clone)]
pub struct OptimalA {
    solver: Arc<Mutex<Solver>>,
    budget: Budget,
}

impl OptimalA {
    pub fn new(rules: Rules) -> Self {
        OptimalA {
            solver: shared(rules),
            budget: Budget::unlimited(),
        }
    }

    /// Per-move search budget; an exhausted budget is reported as an error.
    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

impl AStrategy for OptimalA {
    fn id(&self) -> String {
        "a:optimal".into()
    }

    fn next_column(&mut self, board: &Board) -> Result<usize, StrategyError> {
        let mut solver = self.solver.lock().expect("solver lock");
        Ok(solver.best_a_move_within(board.ys(), self.budget)?)
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn AStrategy> {
        Box::new(self.clone())
    }
}

/// Plays the smallest reply maximizing the remaining game length.
#[derive(Clone)]
pub struct OptimalB {
    solver: Arc<Mutex<Solver>>,
    budget: Budget,
}

impl OptimalB {
    pub fn new(rules: Rules) -> Self {
        OptimalB {
            solver: shared(rules),
            budget: Budget::unlimited(),
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

impl BStrategy for OptimalB {
    fn id(&self) -> String {
        "b:optimal".into()
    }

    fn reply(&mut self, board: &Board, column: usize) -> Result<usize, StrategyError> {
        let mut solver = self.solver.lock().expect("solver lock");
        Ok(solver.best_b_reply_within(board.ys(), column, self.budget)?)
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn BStrategy> {
        Box::new(self.clone())
    }
}
