//! The f-Combined strategy for `A(m,3)`: Middling, then a transition that
//! sets up a half-barb, then the w-Barb mode.

use crate::game::{Board, GameKind, PointId, Rules};
use crate::strategy::{require, AStrategy, Frame, StrategyError, StrategyStats};

use super::barb::{min_barb_width, WBarbMode};
use super::middling::{MiddlingEvent, MiddlingMode};

/// Least `T ≥ 2` with `(T-1)^3 + 17(T-1) ≥ 6(m-3)`.
pub fn combined_t(m: usize) -> usize {
    let target = 6 * m.saturating_sub(3);
    (2..)
        .find(|&t: &usize| (t - 1).pow(3) + 17 * (t - 1) >= target)
        .expect("unbounded search")
}

/// The sequence `f_i = (T-i)(T-i-1)/2 + 1` for `i < T` (0 afterwards).
pub fn combined_f(t: usize) -> Vec<usize> {
    (1..t).map(|i| (t - i) * (t - i - 1) / 2 + 1).collect()
}

/// Turns within which the Combined strategy ends `A(m,3)`: `m + T + 1`.
pub fn combined_guarantee(m: usize) -> usize {
    m + combined_t(m) + 1
}

/// Which mode the strategy is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombinedPhase {
    Middling,
    Transition,
    Barb,
}

#[derive(Debug, Clone)]
enum Phase {
    Middling,
    /// After the Middling exit: `q` deviated just below `left` (in `frame`)
    /// and A plays between them.
    Transition {
        frame: Frame,
        q: PointId,
        left: PointId,
    },
    Barb(WBarbMode),
}

/// The f-Combined strategy.
#[derive(Debug, Clone)]
pub struct CombinedA {
    id: &'static str,
    middling: MiddlingMode,
    phase: Phase,
    wasted: Vec<PointId>,
    stats: StrategyStats,
}

impl CombinedA {
    /// With the default sequence `f` for `m`.
    pub fn new(rules: &Rules) -> Result<Self, StrategyError> {
        Self::with_f(rules, combined_f(combined_t(rules.m)))
    }

    pub fn with_f(rules: &Rules, f: Vec<usize>) -> Result<Self, StrategyError> {
        require("a:combined", rules, GameKind::A, Some(3))?;
        Ok(CombinedA {
            id: "a:combined",
            middling: MiddlingMode::new(f),
            phase: Phase::Middling,
            wasted: Vec::new(),
            stats: StrategyStats::default(),
        })
    }

    /// Leave the Middling mode at the first deviation and go straight to
    /// the w-Barb mode.
    pub fn immediate_barb(rules: &Rules) -> Result<Self, StrategyError> {
        require("a:wbarb", rules, GameKind::A, Some(3))?;
        Ok(CombinedA {
            id: "a:wbarb",
            ..Self::with_f(rules, vec![usize::MAX])?
        })
    }

    pub fn phase(&self) -> CombinedPhase {
        match self.phase {
            Phase::Middling => CombinedPhase::Middling,
            Phase::Transition { .. } => CombinedPhase::Transition,
            Phase::Barb(_) => CombinedPhase::Barb,
        }
    }

    pub fn middling(&self) -> &MiddlingMode {
        &self.middling
    }

    pub fn barb_mode(&self) -> Option<&WBarbMode> {
        match &self.phase {
            Phase::Barb(mode) => Some(mode),
            _ => None,
        }
    }

    /// Points wasted during the transition.
    pub fn transition_wasted(&self) -> &[PointId] {
        &self.wasted
    }

    /// `q` deviated from `S` below its left neighbour as seen in `frame`.
    fn enter_transition(
        &mut self,
        board: &Board,
        q: PointId,
        frame: Frame,
    ) -> Result<(), StrategyError> {
        let s = self.middling.s(board);
        let qx = frame.x(board, q);
        let left = s
            .iter()
            .copied()
            .filter(|&p| frame.x(board, p) < qx)
            .max_by_key(|&p| frame.x(board, p))
            .ok_or_else(|| {
                StrategyError::Contract("combined: deviation has no left neighbour".into())
            })?;
        let (yq, yl) = (frame.y(board, q), frame.y(board, left));
        if yq > yl {
            return Err(StrategyError::Contract(
                "combined: deviation is not below its neighbour".into(),
            ));
        }
        if frame.rows_between(board, &s, yq, yl) > 0 {
            self.enter_barb_below(board, frame, q, &s)
        } else {
            self.phase = Phase::Transition { frame, q, left };
            Ok(())
        }
    }

    /// Barb set-up around a point at least one notch below the up-run `s`:
    /// the lowest point of `s` above-left of it is the upper spike.
    fn enter_barb_below(
        &mut self,
        board: &Board,
        frame: Frame,
        q: PointId,
        s: &[PointId],
    ) -> Result<(), StrategyError> {
        let u = frame.sw(board, q, s);
        let r1 = frame
            .lowest(board, &frame.nw(board, q, s))
            .ok_or_else(|| StrategyError::Contract("combined: nothing of S above-left".into()))?;
        let v1 = frame.ne(board, r1, s);
        self.enter_barb(board, frame, u, r1, q, v1)
    }

    fn enter_barb(
        &mut self,
        board: &Board,
        frame: Frame,
        u: Vec<PointId>,
        r1: PointId,
        q1: PointId,
        v1: Vec<PointId>,
    ) -> Result<(), StrategyError> {
        let excluded: Vec<PointId> = self
            .middling
            .n()
            .iter()
            .chain(self.middling.w())
            .chain(&self.wasted)
            .copied()
            .collect();
        let w = min_barb_width(u.len());
        let mode = WBarbMode::unchecked(board, frame, excluded, u, r1, q1, v1, w)?;
        self.phase = Phase::Barb(mode);
        Ok(())
    }

    /// The reply `hat` to the transition move between `left` and `q`. A
    /// reply between `q` and `left` in height would complete a 3-down-run,
    /// so `hat` is either above `left` or below `q`. Each case leads to a
    /// half-barb and gives up at most one point of the segment.
    fn observe_transition(
        &mut self,
        board: &Board,
        frame: Frame,
        q: PointId,
        left: PointId,
        hat: PointId,
    ) -> Result<(), StrategyError> {
        let s = self.middling.s(board);
        let (yh, yl, yq) = (frame.y(board, hat), frame.y(board, left), frame.y(board, q));
        if yh > yl {
            let between: Vec<PointId> = s
                .iter()
                .copied()
                .filter(|&p| (yl + 1..yh).contains(&frame.y(board, p)))
                .collect();
            return match between.len() {
                // zero notches above the left neighbour: it becomes the upper
                // spike and the reply starts the top wire
                0 => {
                    let u = frame.sw(board, left, &s);
                    let mut v1 = frame.ne(board, left, &s);
                    v1.insert(0, hat);
                    self.enter_barb(board, frame, u, left, q, v1)
                }
                // just above the right neighbour: give that neighbour up and
                // build the same half-barb on top of the reply
                1 => {
                    self.wasted.push(between[0]);
                    let u = frame.sw(board, left, &s);
                    let mut v1 = frame.ne(board, hat, &s);
                    v1.insert(0, hat);
                    self.enter_barb(board, frame, u, left, q, v1)
                }
                // higher still: seen from the mirrored frame the reply is at
                // least one notch below its left neighbour; q is given up
                _ => {
                    self.wasted.push(q);
                    self.enter_barb_below(board, frame.mirrored(), hat, &s)
                }
            };
        }
        if frame.rows_between(board, &s, yh, yq) > 0 {
            self.wasted.push(q);
            return self.enter_barb_below(board, frame, hat, &s);
        }
        // Just below q in the same row of S: the reply and q replace the left
        // neighbour in the up-run, and the left neighbour becomes a deviation
        // at least one notch below the reply in the mirrored frame.
        let mut s2: Vec<PointId> = s.iter().copied().filter(|&p| p != left).collect();
        s2.extend([hat, q]);
        self.enter_barb_below(board, frame.mirrored(), left, &s2)
    }
}

impl AStrategy for CombinedA {
    fn id(&self) -> String {
        self.id.to_string()
    }

    fn next_column(&mut self, board: &Board) -> Result<usize, StrategyError> {
        Ok(match &self.phase {
            Phase::Middling => self.middling.next_column(board),
            Phase::Transition { frame, left, .. } => frame.column_right_of(board, Some(*left)),
            Phase::Barb(mode) => mode.next_column(board),
        })
    }

    fn observe(&mut self, board: &Board, point: PointId) -> Result<(), StrategyError> {
        match self.phase.clone() {
            Phase::Middling => {
                if let MiddlingEvent::Exit { q, above } = self.middling.observe(board, point)? {
                    self.enter_transition(board, q, Frame { flipped: above })?;
                }
                Ok(())
            }
            Phase::Transition { frame, q, left } => {
                self.observe_transition(board, frame, q, left, point)
            }
            Phase::Barb(_) => {
                let Phase::Barb(mode) = &mut self.phase else {
                    unreachable!()
                };
                mode.observe(board, point).map(|_| ())
            }
        }
    }

    fn clone_box(&self) -> Box<dyn AStrategy> {
        Box::new(self.clone())
    }

    fn stats(&self) -> StrategyStats {
        self.stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_and_f() {
        assert_eq!(combined_t(7), 3);
        assert_eq!(combined_t(27), 6);
        assert_eq!(combined_t(4), 2);
        assert_eq!(combined_t(3), 2);
        assert_eq!(combined_guarantee(7), 11);
        assert_eq!(combined_guarantee(27), 34);
        assert_eq!(combined_f(3), vec![2, 1]);
        for t in 2..10 {
            let f = combined_f(t);
            let sum: usize = f.iter().map(|fi| fi + 2).sum();
            assert_eq!(6 * sum, (t - 1).pow(3) + 17 * (t - 1), "T = {t}");
        }
    }

    #[test]
    fn first_moves_follow_the_middle() {
        let rules = Rules::a(5, 3);
        let mut a = CombinedA::new(&rules).unwrap();
        let mut board = Board::new(rules);
        assert_eq!(a.next_column(&board).unwrap(), 0);
        let p = board
            .play(crate::game::Move {
                column: 0,
                reply: 0,
            })
            .unwrap();
        a.observe(&board, p).unwrap();
        assert_eq!(a.phase(), CombinedPhase::Middling);
        assert_eq!(a.next_column(&board).unwrap(), 1);
    }
}
