//! Tier-separation strategies for the B-game.
//!
//! Both answer a column with the lowest tier whose existing points are all
//! at least `s` points away from the column, where `s = ⌊k/2⌋ - 1`. Two
//! consecutive same-tier points of an up-run then cost `s` extra points
//! between them.

use crate::game::{Board, GameKind, PointId, Rules};
use crate::strategy::{require, BStrategy, StrategyError};

/// Number of points strictly between gap `column` and x-position `x`.
pub fn points_between(column: usize, x: usize) -> usize {
    if x < column {
        column - 1 - x
    } else {
        x - column
    }
}

/// Lowest tier in `lo..=hi` whose points all lie at least `gap` points from
/// `column`.
pub fn lowest_separated_tier(
    tiers: &[u8],
    column: usize,
    lo: usize,
    hi: usize,
    gap: usize,
) -> Option<usize> {
    (lo..=hi).find(|&tier| {
        tiers
            .iter()
            .enumerate()
            .all(|(x, &t)| t as usize != tier || points_between(column, x) >= gap)
    })
}

/// `⌊k/2⌋(m-k+1)+k-1`: the B-game length the tier strategy guarantees.
pub fn tiers_guarantee(m: usize, k: usize) -> isize {
    (k / 2) as isize * (m as isize - k as isize + 1) + k as isize - 1
}

/// `(k/2)(m-k+5)-3` for even `k`, `((k-1)/2)(m-k+6)-3` for odd `k`.
pub fn boundary_tiers_guarantee(m: usize, k: usize) -> isize {
    let (m, k) = (m as isize, k as isize);
    if k % 2 == 0 {
        (k / 2) * (m - k + 5) - 3
    } else {
        ((k - 1) / 2) * (m - k + 6) - 3
    }
}

/// Lowest tier separated from the column by `⌊k/2⌋-1` points.
#[derive(Debug, Clone)]
pub struct TiersB {
    k: usize,
}

impl TiersB {
    pub fn new(rules: &Rules) -> Result<Self, StrategyError> {
        require("b:tiers", rules, GameKind::B, None)?;
        Ok(TiersB { k: rules.k })
    }

    pub fn tier(&self, tiers: &[u8], column: usize) -> Result<usize, StrategyError> {
        let gap = (self.k / 2).saturating_sub(1);
        lowest_separated_tier(tiers, column, 1, self.k - 1, gap).ok_or_else(|| {
            StrategyError::Contract(format!("tiers: no separated tier at column {column}"))
        })
    }
}

impl BStrategy for TiersB {
    fn id(&self) -> String {
        "b:tiers".into()
    }

    fn reply(&mut self, board: &Board, column: usize) -> Result<usize, StrategyError> {
        self.tier(board.ys(), column)
    }

    fn observe(&mut self, _board: &Board, _point: PointId) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn BStrategy> {
        Box::new(self.clone())
    }
}

/// Like [`TiersB`] with even `k'` (`k`, or `k-1` for odd `k`), but
/// restricted to tiers `c..=d` with `c = max(1, k'/2 - |left|)` and
/// `d = min(k'-1, k'/2 + |right|)`: columns near the left edge get high
/// tiers and columns near the right edge low ones.
#[derive(Debug, Clone)]
pub struct BoundaryTiersB {
    half: usize,
}

impl BoundaryTiersB {
    pub fn new(rules: &Rules) -> Result<Self, StrategyError> {
        require("b:boundary-tiers", rules, GameKind::B, None)?;
        if rules.k < 4 {
            return Err(crate::strategy::unsupported("b:boundary-tiers", rules));
        }
        Ok(BoundaryTiersB { half: rules.k / 2 })
    }

    /// The allowed tier window for a column on a board of `t` points.
    pub fn window(&self, t: usize, column: usize) -> (usize, usize) {
        let even = 2 * self.half;
        let lo = self.half.saturating_sub(column).max(1);
        let hi = (self.half + (t - column)).min(even - 1);
        (lo, hi)
    }

    pub fn tier(&self, tiers: &[u8], column: usize) -> Result<usize, StrategyError> {
        let (lo, hi) = self.window(tiers.len(), column);
        lowest_separated_tier(tiers, column, lo, hi, self.half - 1).ok_or_else(|| {
            StrategyError::Contract(format!(
                "boundary-tiers: no separated tier at column {column}"
            ))
        })
    }
}

impl BStrategy for BoundaryTiersB {
    fn id(&self) -> String {
        "b:boundary-tiers".into()
    }

    fn reply(&mut self, board: &Board, column: usize) -> Result<usize, StrategyError> {
        self.tier(board.ys(), column)
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

    #[test]
    fn separation_rule() {
        let b = TiersB::new(&Rules::b(5, 4)).unwrap();
        assert_eq!(b.tier(&[], 0).unwrap(), 1);
        // a tier-1 point right next to the column blocks tier 1
        assert_eq!(b.tier(&[1], 0).unwrap(), 2);
        assert_eq!(b.tier(&[1], 1).unwrap(), 2);
        assert_eq!(b.tier(&[1, 2, 3], 3).unwrap(), 1);
        assert_eq!(points_between(2, 0), 1);
        assert_eq!(points_between(2, 2), 0);
        assert_eq!(points_between(2, 4), 2);
    }

    #[test]
    fn boundary_window() {
        let b = BoundaryTiersB::new(&Rules::b(5, 4)).unwrap();
        assert_eq!(b.tier(&[], 0).unwrap(), 2);
        assert_eq!(b.window(0, 0), (2, 2));
        assert_eq!(b.window(3, 3), (1, 2));
        assert_eq!(b.window(3, 0), (2, 3));
        let odd = BoundaryTiersB::new(&Rules::b(6, 5)).unwrap();
        for t in 0..6 {
            for c in 0..=t {
                assert!(odd.window(t, c).1 <= 3);
            }
        }
        assert!(BoundaryTiersB::new(&Rules::b(5, 3)).is_err());
    }

    #[test]
    fn guarantees() {
        assert_eq!(tiers_guarantee(4, 4), 5);
        assert_eq!(boundary_tiers_guarantee(4, 4), 7);
        assert_eq!(boundary_tiers_guarantee(5, 4), 9);
        assert_eq!(boundary_tiers_guarantee(5, 5), 9);
    }
}
