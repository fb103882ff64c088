//! Adversaries for a fixed strategy: exhaustive (every line of the
//! opponent) and seeded random.
//!
//! The exhaustive search is a depth-first walk over the opponent's choices
//! that clones the fixed strategy at every branch. Against a fixed B it
//! looks for the shortest game and prunes with the static bound
//! `t + min(m - LIS, k - LDS)`; against a fixed A it looks for the longest
//! game. Both can stop early once a target is beaten.

use std::ops::Range;

use crate::game::{
    longest_down_run, longest_up_run, Board, GameKind, Move, Rules, TerminationCause,
};
use crate::harness::runner::{play_match, MatchReport};
use crate::harness::HarnessError;
use crate::strategy::{AStrategy, BStrategy, RandomA, RandomB};

pub type Line = Vec<[usize; 2]>;

/// Result of an exhaustive search against a fixed strategy.
#[derive(Debug, Clone, Default)]
pub struct WorstCase {
    /// Shortest (fixed B) or longest (fixed A) game found.
    pub turns: usize,
    /// A line of play realizing `turns`.
    pub line: Line,
    pub nodes: u64,
    /// The search stopped early because the target was beaten.
    pub stopped_early: bool,
    /// First invariant violation reported by a fixed B, with its line.
    pub violation: Option<(String, Line)>,
    /// First non-fatal note reported by a fixed B, with its line, and the
    /// number of nodes at which a new note appeared.
    pub note: Option<(String, Line)>,
    pub notes: u64,
    /// A line on which the game ended in a down-run, if any.
    pub down_run: Option<Line>,
    /// Largest fallback count reported by the fixed strategy on any line.
    pub max_fallbacks: u32,
}

/// Search limits.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    /// Stop as soon as a game shorter (fixed B) or longer (fixed A) than
    /// this is found.
    pub target: Option<usize>,
    pub max_nodes: Option<u64>,
}

fn lower_bound(board: &Board) -> usize {
    let rules = board.rules();
    let ys = board.ys();
    match rules.kind {
        GameKind::A => {
            let up = rules.m - longest_up_run(ys, false);
            let down = rules.k - longest_down_run(ys);
            up.min(down)
        }
        GameKind::B => rules.m - longest_up_run(ys, true),
    }
}

struct Search {
    limits: SearchLimits,
    out: WorstCase,
    line: Line,
    minimize: bool,
}

impl Search {
    fn new(limits: SearchLimits, minimize: bool, rules: &Rules) -> Self {
        let turns = if minimize { rules.max_points() + 1 } else { 0 };
        Search {
            limits,
            out: WorstCase {
                turns,
                ..WorstCase::default()
            },
            line: Vec::new(),
            minimize,
        }
    }

    fn tick(&mut self) -> Result<(), HarnessError> {
        self.out.nodes += 1;
        match self.limits.max_nodes {
            Some(max) if self.out.nodes > max => Err(HarnessError::SearchBudget(max)),
            _ => Ok(()),
        }
    }

    fn done(&self) -> bool {
        self.out.stopped_early
    }

    fn leaf(&mut self, board: &Board) {
        let t = board.len();
        if board.terminal() == Some(TerminationCause::DownRun) && self.out.down_run.is_none() {
            self.out.down_run = Some(self.line.clone());
        }
        let better = if self.minimize {
            t < self.out.turns
        } else {
            t > self.out.turns
        };
        if better {
            self.out.turns = t;
            self.out.line = self.line.clone();
            let beaten = match self.limits.target {
                Some(target) if self.minimize => t < target,
                Some(target) => t > target,
                None => false,
            };
            self.out.stopped_early |= beaten;
        }
    }

    fn fail(&self, who: String, e: impl std::fmt::Display) -> HarnessError {
        HarnessError::Contract {
            message: format!("{who}: {e}"),
            line: self.line.clone(),
        }
    }

    fn vs_b(&mut self, board: &Board, b: &dyn BStrategy) -> Result<(), HarnessError> {
        self.tick()?;
        if board.len() + lower_bound(board) >= self.out.turns {
            return Ok(());
        }
        let before = b.notes().len();
        for column in 0..=board.len() {
            let mut b = b.clone_box();
            let reply = b.reply(board, column).map_err(|e| self.fail(b.id(), e))?;
            let mv = Move { column, reply };
            let mut next = board.clone();
            let id = next.play(mv).map_err(|e| self.fail(b.id(), e))?;
            self.line.push([column, reply]);
            if next.terminal().is_some() {
                self.leaf(&next);
            } else {
                b.observe(&next, id).map_err(|e| self.fail(b.id(), e))?;
                self.out.max_fallbacks = self.out.max_fallbacks.max(b.stats().fallbacks);
                if self.out.violation.is_none() {
                    if let Some(v) = b.violations().into_iter().next() {
                        self.out.violation = Some((v, self.line.clone()));
                    }
                }
                let notes = b.notes();
                if notes.len() > before {
                    self.out.notes += 1;
                    if self.out.note.is_none() {
                        self.out.note = Some((notes[before].clone(), self.line.clone()));
                    }
                }
                self.vs_b(&next, b.as_ref())?;
            }
            self.line.pop();
            if self.done() {
                break;
            }
        }
        Ok(())
    }

    fn vs_a(&mut self, board: &Board, a: &dyn AStrategy) -> Result<(), HarnessError> {
        self.tick()?;
        if board.rules().max_points() <= self.out.turns {
            return Ok(());
        }
        let mut proposer = a.clone_box();
        let column = proposer
            .next_column(board)
            .map_err(|e| self.fail(a.id(), e))?;
        for reply in board.replies() {
            let mut a = proposer.clone_box();
            let mut next = board.clone();
            let id = next
                .play(Move { column, reply })
                .map_err(|e| self.fail(a.id(), e))?;
            self.line.push([column, reply]);
            if next.terminal().is_some() {
                self.leaf(&next);
            } else {
                a.observe(&next, id).map_err(|e| self.fail(a.id(), e))?;
                self.out.max_fallbacks = self.out.max_fallbacks.max(a.stats().fallbacks);
                self.vs_a(&next, a.as_ref())?;
            }
            self.line.pop();
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

/// Shortest game A can force against the fixed `b`.
pub fn exhaustive_vs_b(
    rules: Rules,
    b: &dyn BStrategy,
    limits: SearchLimits,
) -> Result<WorstCase, HarnessError> {
    let mut search = Search::new(limits, true, &rules);
    search.vs_b(&Board::new(rules), b)?;
    Ok(search.out)
}

/// Longest game B can force against the fixed `a`.
pub fn exhaustive_vs_a(
    rules: Rules,
    a: &dyn AStrategy,
    limits: SearchLimits,
) -> Result<WorstCase, HarnessError> {
    let mut search = Search::new(limits, false, &rules);
    search.vs_a(&Board::new(rules), a)?;
    Ok(search.out)
}

/// The fixed `a` against `b:random(seed)` for every seed in the range.
pub fn random_vs_a(rules: Rules, a: &dyn AStrategy, seeds: Range<u64>) -> Vec<MatchReport> {
    seeds
        .map(|seed| {
            let mut a = a.clone_box();
            let mut b = RandomB::new(rules, seed);
            play_match(rules, a.as_mut(), &mut b, None, Some(seed))
        })
        .collect()
}

/// `a:random(seed)` against the fixed `b` for every seed in the range.
pub fn random_vs_b(rules: Rules, b: &dyn BStrategy, seeds: Range<u64>) -> Vec<MatchReport> {
    seeds
        .map(|seed| {
            let mut a = RandomA::new(rules, seed);
            let mut b = b.clone_box();
            play_match(rules, &mut a, b.as_mut(), None, Some(seed))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_b, solve_eso};
    use crate::strategy::{OptimalA, OptimalB};

    #[test]
    fn optimal_strategies_realize_the_game_value() {
        for (m, k) in [(3, 3), (4, 3), (3, 4)] {
            let rules = Rules::a(m, k);
            let value = solve_eso(m, k).unwrap().turns;
            let vs_a =
                exhaustive_vs_a(rules, &OptimalA::new(rules), SearchLimits::default()).unwrap();
            let vs_b =
                exhaustive_vs_b(rules, &OptimalB::new(rules), SearchLimits::default()).unwrap();
            assert_eq!((vs_a.turns, vs_b.turns), (value, value), "({m},{k})");
        }
        let rules = Rules::b(4, 4);
        let value = solve_b(4, 4).unwrap().turns;
        let vs_a = exhaustive_vs_a(rules, &OptimalA::new(rules), SearchLimits::default()).unwrap();
        assert_eq!(vs_a.turns, value);
    }

    #[test]
    fn target_stops_the_search() {
        let rules = Rules::a(4, 3);
        let limits = SearchLimits {
            target: Some(100),
            max_nodes: None,
        };
        let r = exhaustive_vs_b(rules, &OptimalB::new(rules), limits).unwrap();
        assert!(r.stopped_early);
        let limits = SearchLimits {
            target: None,
            max_nodes: Some(3),
        };
        assert!(exhaustive_vs_b(rules, &OptimalB::new(rules), limits).is_err());
    }

    #[test]
    fn random_adversaries_replay() {
        let rules = Rules::a(5, 3);
        let games = random_vs_b(rules, &OptimalB::new(rules), 0..5);
        assert_eq!(games.len(), 5);
        for g in games {
            g.transcript.replay().unwrap();
            assert!(g.turns() >= 7);
        }
    }
}
