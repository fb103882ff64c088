//! The non-extender: never lengthen the longest up-run.

use crate::game::{Board, GameKind, PointId, Rules};
use crate::strategy::{require, BStrategy, StrategyError};

/// Places each point just above its right neighbour (just below its left
/// neighbour at the right edge). The new point can stand in for that
/// neighbour in any up-run, so no up-run gets longer.
#[derive(Debug, Clone)]
pub struct NonExtenderB;

impl NonExtenderB {
    pub fn new(rules: &Rules) -> Result<Self, StrategyError> {
        require("b:nonextend", rules, GameKind::A, None)?;
        Ok(NonExtenderB)
    }

    pub fn row(ranks: &[u8], column: usize) -> usize {
        if let Some(&right) = ranks.get(column) {
            right as usize
        } else if let Some(&left) = column.checked_sub(1).and_then(|x| ranks.get(x)) {
            left as usize - 1
        } else {
            0
        }
    }
}

impl BStrategy for NonExtenderB {
    fn id(&self) -> String {
        "b:nonextend".into()
    }

    fn reply(&mut self, board: &Board, column: usize) -> Result<usize, StrategyError> {
        Ok(Self::row(board.ys(), column))
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn BStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::RankedState;

    #[test]
    fn rows() {
        assert_eq!(NonExtenderB::row(&[], 0), 0);
        assert_eq!(NonExtenderB::row(&[1], 0), 1);
        assert_eq!(NonExtenderB::row(&[1, 2, 3], 1), 2);
        assert_eq!(NonExtenderB::row(&[1, 2, 3], 3), 2);
        let s = RankedState::new(vec![1, 2, 3]).unwrap();
        assert_eq!(s.insert(1, 2).unwrap().longest_up_run(), 3);
        assert_eq!(s.insert(3, 2).unwrap().longest_up_run(), 3);
    }
}
