//! Uniformly random play from a seeded ChaCha8 stream.
//!
//! The stream is `ChaCha8Rng::seed_from_u64(seed)`, one `gen_range` draw
//! per decision, so a seed replays the same game on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Board, PointId, Rules};
use crate::strategy::{AStrategy, BStrategy, StrategyError};

#[derive(Debug, Clone)]
pub struct RandomA {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomA {
    pub fn new(_rules: Rules, seed: u64) -> Self {
        RandomA {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl AStrategy for RandomA {
    fn id(&self) -> String {
        format!("a:random({})", self.seed)
    }

    fn next_column(&mut self, board: &Board) -> Result<usize, StrategyError> {
        Ok(self.rng.gen_range(0..=board.len()))
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn AStrategy> {
        Box::new(self.clone())
    }
}

#[derive(Debug, Clone)]
pub struct RandomB {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomB {
    pub fn new(_rules: Rules, seed: u64) -> Self {
        RandomB {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl BStrategy for RandomB {
    fn id(&self) -> String {
        format!("b:random({})", self.seed)
    }

    fn reply(&mut self, board: &Board, _column: usize) -> Result<usize, StrategyError> {
        Ok(self.rng.gen_range(board.replies()))
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn BStrategy> {
        Box::new(self.clone())
    }
}
