//! The game loop: A proposes a column, B answers, both observe.

use crate::game::{Board, Move, Rules};
use crate::harness::transcript::{Cause, Strategies, Transcript};
use crate::harness::HarnessError;
use crate::strategy::{AStrategy, BStrategy, StrategyId, StrategyRegistry, StrategyStats};

/// One past the classical bound: a game between contract-abiding
/// strategies never gets this far.
pub fn default_max_turns(rules: &Rules) -> usize {
    (rules.m - 1) * (rules.k - 1) + 2
}

/// A finished match: its transcript plus what the strategies reported.
#[derive(Debug, Clone)]
pub struct MatchReport {
    pub transcript: Transcript,
    pub a_stats: StrategyStats,
    pub b_stats: StrategyStats,
    /// Invariant failures reported by B's strategy.
    pub violations: Vec<String>,
    /// Non-fatal observations reported by B's strategy.
    pub notes: Vec<String>,
}

impl MatchReport {
    pub fn turns(&self) -> usize {
        self.transcript.result.turns
    }

    pub fn cause(&self) -> Cause {
        self.transcript.result.cause
    }
}

/// Plays one game to the end (or to `max_turns`). A strategy error ends the
/// match with cause `error` and the message as diagnostic.
pub fn play_match(
    rules: Rules,
    a: &mut dyn AStrategy,
    b: &mut dyn BStrategy,
    max_turns: Option<usize>,
    seed: Option<u64>,
) -> MatchReport {
    let limit = max_turns.unwrap_or_else(|| default_max_turns(&rules));
    let mut board = Board::new(rules);
    let mut moves = Vec::new();
    let mut diagnostic = None;
    while board.terminal().is_none() && board.len() < limit {
        match turn(&mut board, a, b) {
            Ok(mv) => moves.push([mv.column, mv.reply]),
            Err(e) => {
                diagnostic = Some(e);
                break;
            }
        }
    }
    let strategies = Strategies {
        a: a.id(),
        b: b.id(),
    };
    let mut transcript = Transcript::from_board(&board, moves, strategies, seed);
    if diagnostic.is_some() {
        transcript.result.cause = Cause::Error;
        transcript.result.diagnostic = diagnostic;
    }
    MatchReport {
        transcript,
        a_stats: a.stats(),
        b_stats: b.stats(),
        violations: b.violations(),
        notes: b.notes(),
    }
}

fn turn(board: &mut Board, a: &mut dyn AStrategy, b: &mut dyn BStrategy) -> Result<Move, String> {
    let column = a
        .next_column(board)
        .map_err(|e| format!("{}: {e}", a.id()))?;
    if column > board.len() {
        return Err(format!("{}: column {column} out of range", a.id()));
    }
    let reply = b
        .reply(board, column)
        .map_err(|e| format!("{}: {e}", b.id()))?;
    let mv = Move { column, reply };
    board.validate(mv).map_err(|e| format!("{}: {e}", b.id()))?;
    let id = board.play(mv).map_err(|e| e.to_string())?;
    if board.terminal().is_none() {
        a.observe(board, id)
            .map_err(|e| format!("{}: {e}", a.id()))?;
        b.observe(board, id)
            .map_err(|e| format!("{}: {e}", b.id()))?;
    }
    Ok(mv)
}

/// Substitutes `seed` into random strategy ids given without an argument
/// (`a:random` becomes `a:random(7)`).
pub fn seeded_id(id: &str, seed: Option<u64>) -> String {
    match (id.parse::<StrategyId>(), seed) {
        (Ok(parsed), Some(seed)) if parsed.name == "random" && parsed.arg.is_none() => {
            format!("{}:random({seed})", parsed.side)
        }
        _ => id.to_string(),
    }
}

/// Builds both strategies from their ids and plays them.
pub fn run_match(
    registry: &StrategyRegistry,
    rules: Rules,
    a_id: &str,
    b_id: &str,
    max_turns: Option<usize>,
    seed: Option<u64>,
) -> Result<MatchReport, HarnessError> {
    let mut a = registry.create_a(&seeded_id(a_id, seed), &rules)?;
    let mut b = registry.create_b(&seeded_id(b_id, seed), &rules)?;
    Ok(play_match(rules, a.as_mut(), b.as_mut(), max_turns, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_play_matches_the_solver() {
        let reg = StrategyRegistry::standard();
        let r = run_match(&reg, Rules::a(3, 3), "a:optimal", "b:optimal", None, None).unwrap();
        assert_eq!(r.turns(), 4);
        r.transcript.replay().unwrap();
    }

    #[test]
    fn seeds_are_substituted_and_replayable() {
        assert_eq!(seeded_id("a:random", Some(3)), "a:random(3)");
        assert_eq!(seeded_id("a:random(1)", Some(3)), "a:random(1)");
        assert_eq!(seeded_id("b:tiers", Some(3)), "b:tiers");
        let reg = StrategyRegistry::standard();
        let one = run_match(&reg, Rules::a(5, 3), "a:random", "b:random", None, Some(11)).unwrap();
        let two = run_match(&reg, Rules::a(5, 3), "a:random", "b:random", None, Some(11)).unwrap();
        assert_eq!(one.transcript, two.transcript);
        assert_eq!(one.transcript.strategies.a, "a:random(11)");
    }

    #[test]
    fn turn_limit() {
        let reg = StrategyRegistry::standard();
        let r = run_match(
            &reg,
            Rules::a(5, 5),
            "a:random(1)",
            "b:nonextend",
            Some(2),
            None,
        )
        .unwrap();
        assert_eq!(r.turns(), 2);
        assert_eq!(r.cause(), Cause::MaxTurns);
        r.transcript.replay().unwrap();
    }
}
