//! Coordinates seen through an optional half-turn.
//!
//! Several strategy steps are written for one orientation and applied to
//! the other by symmetry. A [`Frame`] maps board coordinates into the
//! orientation a step was written for, so that step is coded once: with
//! `flipped`, x-positions and y-ranks are reversed, which maps NE to SW and
//! NW to SE and preserves up-runs.

use crate::game::{Board, PointId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct Frame {
    pub flipped: bool,
}

impl Frame {
    pub const PLAIN: Frame = Frame { flipped: false };

    /// The frame rotated by 180 degrees relative to this one.
    pub fn mirrored(self) -> Frame {
        Frame {
            flipped: !self.flipped,
        }
    }

    pub fn x(&self, board: &Board, p: PointId) -> usize {
        let x = board.x(p);
        if self.flipped {
            board.len() - 1 - x
        } else {
            x
        }
    }

    pub fn y(&self, board: &Board, p: PointId) -> usize {
        let y = board.y(p) as usize;
        if self.flipped {
            board.len() + 1 - y
        } else {
            y
        }
    }

    /// Board gap index of the frame gap `c`.
    pub fn board_column(&self, board: &Board, c: usize) -> usize {
        if self.flipped {
            board.len() - c
        } else {
            c
        }
    }

    /// Board column immediately right (in this frame) of `p`, or the
    /// frame's leftmost column when `p` is `None`.
    pub fn column_right_of(&self, board: &Board, p: Option<PointId>) -> usize {
        let c = p.map_or(0, |p| self.x(board, p) + 1);
        self.board_column(board, c)
    }

    /// Points of `within` strictly inside a quadrant of `p`, sorted by frame
    /// x.
    pub fn quadrant(
        &self,
        board: &Board,
        p: PointId,
        within: &[PointId],
        north: bool,
        east: bool,
    ) -> Vec<PointId> {
        let (px, py) = (self.x(board, p), self.y(board, p));
        let mut out: Vec<PointId> = within
            .iter()
            .copied()
            .filter(|&q| {
                let (qx, qy) = (self.x(board, q), self.y(board, q));
                q != p && (qx > px) == east && (qy > py) == north
            })
            .collect();
        self.sort_by_x(board, &mut out);
        out
    }

    pub fn ne(&self, board: &Board, p: PointId, within: &[PointId]) -> Vec<PointId> {
        self.quadrant(board, p, within, true, true)
    }

    pub fn nw(&self, board: &Board, p: PointId, within: &[PointId]) -> Vec<PointId> {
        self.quadrant(board, p, within, true, false)
    }

    pub fn sw(&self, board: &Board, p: PointId, within: &[PointId]) -> Vec<PointId> {
        self.quadrant(board, p, within, false, false)
    }

    pub fn se(&self, board: &Board, p: PointId, within: &[PointId]) -> Vec<PointId> {
        self.quadrant(board, p, within, false, true)
    }

    pub fn sort_by_x(&self, board: &Board, points: &mut [PointId]) {
        points.sort_by_key(|&q| self.x(board, q));
    }

    /// Lowest point of a set, in this frame.
    pub fn lowest(&self, board: &Board, points: &[PointId]) -> Option<PointId> {
        points.iter().copied().min_by_key(|&q| self.y(board, q))
    }

    /// Number of points of `within` whose frame y lies strictly between
    /// those of `lo` and `hi`.
    pub fn rows_between(&self, board: &Board, within: &[PointId], lo: usize, hi: usize) -> usize {
        within
            .iter()
            .filter(|&&q| {
                let y = self.y(board, q);
                lo < y && y < hi
            })
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{RankedState, Rules};

    #[test]
    fn flipped_frame_swaps_quadrants() {
        let board = Board::from_ranks(
            Rules::a(9, 9),
            &RankedState::new(vec![1, 5, 6, 4, 3, 2]).unwrap(),
        );
        let all: Vec<PointId> = board.ids().to_vec();
        let p = board.id_at(3);
        let plain = Frame::PLAIN;
        let flip = Frame { flipped: true };
        assert_eq!(plain.ne(&board, p, &all), flip.sw(&board, p, &all));
        assert_eq!(
            plain.nw(&board, p, &all).len(),
            flip.se(&board, p, &all).len()
        );
        assert_eq!(flip.x(&board, board.id_at(0)), 5);
        assert_eq!(flip.y(&board, board.id_at(0)), 6);
        // the gap right of x-position 3 is the gap left of it when flipped
        assert_eq!(plain.column_right_of(&board, Some(p)), 4);
        assert_eq!(flip.column_right_of(&board, Some(p)), 3);
        assert_eq!(flip.column_right_of(&board, None), 6);
    }
}
