//! The f-Middling mode: keep playing in the middle of an up-run `S`.
//!
//! Every reply either extends `S` or deviates from it. A deviation is
//! "wasted" and the active segment shrinks to the larger side of it, saving
//! the cut-off part of `S` in `N`; `S ∪ N` stays an up-run throughout. When
//! the side of `S` beyond a deviation is small (at most `f_t` points after
//! the `t`-th deviation) the mode exits and hands over to the caller.

use serde::Serialize;

use crate::game::{Board, PointId};
use crate::strategy::{Frame, StrategyError};

/// What the mode did with a new point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddlingEvent {
    /// The point extended `S`.
    Extended,
    /// The point deviated; it joined `W` and the segment shrank.
    Deviated { t: usize },
    /// The point deviated with a small side; the mode is over. `above` is
    /// true when the point lies above the right neighbour of its column
    /// (false: below the left neighbour). `S`, `N` and `W` are unchanged.
    Exit { q: PointId, above: bool },
}

/// Bookkeeping for one deviation that kept the mode running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub t: usize,
    pub saved: usize,
    pub kept: usize,
}

/// The state of an f-Middling mode.
///
/// The active segment is spanned by two corner points, `None` standing for
/// the board corners `(0,0)` and `(1,1)`.
#[derive(Debug, Clone)]
pub struct MiddlingMode {
    f: Vec<usize>,
    exits: bool,
    s: Vec<PointId>,
    n: Vec<PointId>,
    w: Vec<PointId>,
    t: usize,
    lower: Option<PointId>,
    upper: Option<PointId>,
    pending: Option<(Option<PointId>, Option<PointId>)>,
    deviations: Vec<Deviation>,
    exited: bool,
}

impl MiddlingMode {
    /// `f[i-1]` is `f_i`; entries past the end are 0.
    pub fn new(f: Vec<usize>) -> Self {
        MiddlingMode {
            f,
            exits: true,
            s: Vec::new(),
            n: Vec::new(),
            w: Vec::new(),
            t: 0,
            lower: None,
            upper: None,
            pending: None,
            deviations: Vec::new(),
            exited: false,
        }
    }

    /// A mode that never exits: every deviation shrinks the segment.
    pub fn endless() -> Self {
        MiddlingMode {
            exits: false,
            ..Self::new(Vec::new())
        }
    }

    pub fn f(&self, i: usize) -> usize {
        self.f.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `S` in x-order.
    pub fn s(&self, board: &Board) -> Vec<PointId> {
        let mut s = self.s.clone();
        Frame::PLAIN.sort_by_x(board, &mut s);
        s
    }

    pub fn n(&self) -> &[PointId] {
        &self.n
    }

    pub fn w(&self) -> &[PointId] {
        &self.w
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Corner points of the active segment: lower-left and upper-right.
    pub fn segment(&self) -> (Option<PointId>, Option<PointId>) {
        (self.lower, self.upper)
    }

    pub fn deviations(&self) -> &[Deviation] {
        &self.deviations
    }

    pub fn has_exited(&self) -> bool {
        self.exited
    }

    /// Indices `g` of the middlemost gaps of `S` (gap `g` lies between the
    /// `g`-th and `(g+1)`-th point of `S`, counting segment corners as the
    /// outermost walls). One index when `|S|` is even, two when odd.
    pub fn middlemost_gaps(&self) -> Vec<usize> {
        let s = self.s.len();
        if s.is_multiple_of(2) {
            vec![s / 2]
        } else {
            vec![s / 2, s / 2 + 1]
        }
    }

    /// The points bounding gap `g` of `S`.
    pub fn gap_bounds(&self, board: &Board, g: usize) -> (Option<PointId>, Option<PointId>) {
        let s = self.s(board);
        let left = if g == 0 { self.lower } else { Some(s[g - 1]) };
        let right = if g == s.len() { self.upper } else { Some(s[g]) };
        (left, right)
    }

    /// Board column of gap `g` of `S`.
    pub fn gap_column(&self, board: &Board, g: usize) -> usize {
        let (left, right) = self.gap_bounds(board, g);
        match (left, right) {
            (Some(l), _) => board.x(l) + 1,
            (None, Some(r)) => board.x(r),
            (None, None) => 0,
        }
    }

    /// Play in the middlemost gap `⌈|S|/2⌉`.
    pub fn next_column(&mut self, board: &Board) -> usize {
        let g = self.s.len().div_ceil(2);
        self.play_gap(board, g)
    }

    /// Play in gap `g` of `S` (any middlemost gap keeps the analysis valid).
    pub fn play_gap(&mut self, board: &Board, g: usize) -> usize {
        self.pending = Some(self.gap_bounds(board, g));
        self.gap_column(board, g)
    }

    pub fn observe(&mut self, board: &Board, q: PointId) -> Result<MiddlingEvent, StrategyError> {
        let (left, right) = self
            .pending
            .take()
            .ok_or_else(|| StrategyError::Contract("middling: observe without a move".into()))?;
        let yq = board.y(q);
        let above_left = left.is_none_or(|l| board.y(l) < yq);
        let below_right = right.is_none_or(|r| yq < board.y(r));
        if above_left && below_right {
            if !self.in_segment(board, q) {
                return Err(StrategyError::Contract(format!(
                    "middling: point {q} left the active segment"
                )));
            }
            self.s.push(q);
            return Ok(MiddlingEvent::Extended);
        }
        let above = !below_right;
        if !self.in_segment(board, q) {
            return Err(StrategyError::Contract(format!(
                "middling: point {q} left the active segment"
            )));
        }
        self.t += 1;
        let ne = Frame::PLAIN.ne(board, q, &self.s).len();
        let sw = Frame::PLAIN.sw(board, q, &self.s).len();
        let f = self.f(self.t);
        if self.exits && (ne <= f || sw <= f) {
            self.exited = true;
            return Ok(MiddlingEvent::Exit { q, above });
        }
        self.w.push(q);
        let cut = if above {
            // the rightmost S-point below and right of q becomes the new
            // lower-left corner; it and everything of S below-left of it
            // are saved
            let se = Frame::PLAIN.se(board, q, &self.s);
            let hat = *se.last().ok_or_else(|| {
                StrategyError::Contract("middling: nothing of S below-right".into())
            })?;
            self.lower = Some(hat);
            let mut cut = Frame::PLAIN.sw(board, hat, &self.s);
            cut.push(hat);
            cut
        } else {
            let nw = Frame::PLAIN.nw(board, q, &self.s);
            let hat = *nw.first().ok_or_else(|| {
                StrategyError::Contract("middling: nothing of S above-left".into())
            })?;
            self.upper = Some(hat);
            let mut cut = Frame::PLAIN.ne(board, hat, &self.s);
            cut.push(hat);
            cut
        };
        self.s.retain(|p| !cut.contains(p));
        self.n.extend(cut.iter().copied());
        self.deviations.push(Deviation {
            t: self.t,
            saved: cut.len(),
            kept: self.s.len(),
        });
        Ok(MiddlingEvent::Deviated { t: self.t })
    }

    /// Whether a point lies strictly inside the active segment.
    fn in_segment(&self, board: &Board, q: PointId) -> bool {
        let (x, y) = (board.x(q), board.y(q));
        self.lower.is_none_or(|l| board.x(l) < x && board.y(l) < y)
            && self.upper.is_none_or(|u| x < board.x(u) && y < board.y(u))
    }
}
