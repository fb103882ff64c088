//! Halving for the B-game: keep low tiers left of high tiers.

use crate::game::{Board, GameKind, PointId, Rules};
use crate::strategy::{require, AStrategy, StrategyError};

/// Plays so that every point left of the column has tier `≤ k/2` and every
/// point right of it has tier `> k/2`. Ends `B(m,k)` within
/// `⌊k/2⌋(m-1)+1` turns.
#[derive(Debug, Clone)]
pub struct HalvingA {
    k: usize,
}

/// Turns within which halving ends `B(m,k)`.
pub fn halving_guarantee(m: usize, k: usize) -> usize {
    (k / 2) * (m - 1) + 1
}

impl HalvingA {
    pub fn new(rules: &Rules) -> Result<Self, StrategyError> {
        require("a:halving", rules, GameKind::B, None)?;
        Ok(HalvingA { k: rules.k })
    }

    /// The separating column of a tier sequence.
    pub fn column(tiers: &[u8], k: usize) -> Result<usize, StrategyError> {
        let low = tiers.iter().filter(|&&t| 2 * t as usize <= k).count();
        if tiers[..low].iter().any(|&t| 2 * t as usize > k) {
            return Err(StrategyError::Contract(
                "halving: low and high tiers interleave".into(),
            ));
        }
        Ok(low)
    }
}

impl AStrategy for HalvingA {
    fn id(&self) -> String {
        "a:halving".into()
    }

    fn next_column(&mut self, board: &Board) -> Result<usize, StrategyError> {
        Self::column(board.ys(), self.k)
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn AStrategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separating_column() {
        assert_eq!(HalvingA::column(&[], 4).unwrap(), 0);
        assert_eq!(HalvingA::column(&[1, 3], 4).unwrap(), 1);
        assert_eq!(HalvingA::column(&[2, 1, 2, 3, 3], 4).unwrap(), 3);
        assert!(HalvingA::column(&[3, 1], 4).is_err());
        assert_eq!(halving_guarantee(4, 4), 7);
    }
}
