//! One human-versus-engine game and the JSON views of it.
//!
//! A session owns the board, the move list and the engine strategy. The
//! engine sees every turn through `observe`, so its replies depend only on
//! its id, the seed and the moves so far. When the human plays B, the
//! engine's next column is chosen as soon as the previous turn ends and is
//! shown as `pending_column`.

use std::time::Duration;

use eso_core::game::{down_run_witness, up_run_witness, Board, GameKind, Move, Rules};
use eso_core::harness::{seeded_id, Cause, Strategies, Transcript};
use eso_core::solver::{Budget, Outcome, SolveError, Solver};
use eso_core::strategy::{AStrategy, BStrategy, StrategyId, StrategyRegistry};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest game a session accepts: ranks are stored in a byte.
const MAX_POINTS: usize = 200;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Conflict(String),
    #[error("engine failed: {0}")]
    Engine(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CreateGame {
    pub kind: GameKind,
    pub m: usize,
    pub k: usize,
    pub human: Side,
    pub engine: String,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A human move: `column` when playing A, `row` (A-game) or `tier`
/// (B-game) when playing B.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Play {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tier: Option<usize>,
}

impl Play {
    fn column(column: usize) -> Self {
        Play {
            column: Some(column),
            ..Play::default()
        }
    }

    fn reply(kind: GameKind, reply: usize) -> Self {
        match kind {
            GameKind::A => Play {
                row: Some(reply),
                ..Play::default()
            },
            GameKind::B => Play {
                tier: Some(reply),
                ..Play::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    InProgress,
    Over,
    Error,
}

/// Everything the UI shows about a game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateView {
    pub id: String,
    pub kind: GameKind,
    pub m: usize,
    pub k: usize,
    pub human: Side,
    pub engine: String,
    pub seed: u64,
    /// Number of points played.
    pub turn: usize,
    /// y-ranks (A-game) or tiers (B-game) in x-order.
    pub points: Vec<u8>,
    /// Turn (0-based) at which each point, in x-order, was played.
    pub played_at: Vec<usize>,
    pub longest_up_run: usize,
    pub longest_down_run: usize,
    /// x-positions of one longest up-run and one longest down-run.
    pub up_run: Vec<usize>,
    pub down_run: Vec<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cause: Option<String>,
    /// Who moves next and what they choose: `column`, `row` or `tier`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to_move: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub awaiting: Option<String>,
    /// The engine's column the human B must answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pending_column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub transcript: Transcript,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveResponse {
    /// The engine's answer in the same turn (human A) or its next column
    /// (human B); absent once the game is over.
    pub engine: Option<Play>,
    pub state: StateView,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HintSource {
    Optimal,
    Strategy,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hint {
    #[serde(rename = "move")]
    pub play: Play,
    pub source: HintSource,
    /// Game length under optimal play after the hinted move.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    /// Strategy that produced a non-optimal hint.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
}

enum Engine {
    A(Box<dyn AStrategy>),
    B(Box<dyn BStrategy>),
}

pub struct Session {
    id: String,
    rules: Rules,
    human: Side,
    engine_id: String,
    seed: u64,
    engine: Engine,
    board: Board,
    moves: Vec<[usize; 2]>,
    pending_column: Option<usize>,
    error: Option<String>,
}

fn validate_rules(kind: GameKind, m: usize, k: usize) -> Result<Rules, SessionError> {
    let rules = Rules::new(kind, m, k).map_err(|e| SessionError::Invalid(e.to_string()))?;
    if rules.max_points() > MAX_POINTS {
        return Err(SessionError::Invalid(format!(
            "{rules} is too large (more than {MAX_POINTS} points)"
        )));
    }
    Ok(rules)
}

impl Session {
    /// Starts a game. `optimal_budget` bounds the check that an optimal
    /// engine can actually solve the game.
    pub fn create(
        id: String,
        req: &CreateGame,
        registry: &StrategyRegistry,
        optimal_budget: Duration,
    ) -> Result<Self, SessionError> {
        let rules = validate_rules(req.kind, req.m, req.k)?;
        let seed = req.seed.unwrap_or(0);
        let engine_id = seeded_id(&req.engine, Some(seed));
        let parsed: StrategyId = engine_id
            .parse()
            .map_err(|e| SessionError::Invalid(format!("{e}")))?;
        let engine = match (req.human, parsed.side) {
            (Side::B, 'a') => Engine::A(
                registry
                    .create_a(&engine_id, &rules)
                    .map_err(|e| SessionError::Invalid(e.to_string()))?,
            ),
            (Side::A, 'b') => Engine::B(
                registry
                    .create_b(&engine_id, &rules)
                    .map_err(|e| SessionError::Invalid(e.to_string()))?,
            ),
            _ => {
                return Err(SessionError::Invalid(format!(
                    "engine {engine_id} plays the same side as the human ({:?})",
                    req.human
                )))
            }
        };
        if parsed.name == "optimal" {
            let outcome = Solver::new(rules).solve(
                &[],
                Budget {
                    time: Some(optimal_budget),
                    nodes: None,
                },
            );
            if !matches!(outcome, Ok(Outcome::Exact { .. })) {
                return Err(SessionError::Invalid(format!(
                    "{rules} is too large for the optimal engine"
                )));
            }
        }
        let mut session = Session {
            id,
            rules,
            human: req.human,
            engine_id,
            seed,
            engine,
            board: Board::new(rules),
            moves: Vec::new(),
            pending_column: None,
            error: None,
        };
        session.engine_proposes()?;
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn moves(&self) -> &[[usize; 2]] {
        &self.moves
    }

    pub fn human(&self) -> Side {
        self.human
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn pending_column(&self) -> Option<usize> {
        self.pending_column
    }

    pub fn is_over(&self) -> bool {
        self.board.terminal().is_some()
    }

    /// When the engine plays A and the game is running, pick its column.
    fn engine_proposes(&mut self) -> Result<(), SessionError> {
        if self.is_over() {
            self.pending_column = None;
            return Ok(());
        }
        if let Engine::A(a) = &mut self.engine {
            let column = a
                .next_column(&self.board)
                .map_err(|e| self.fail(e.to_string()))?;
            if column > self.board.len() {
                return Err(self.fail(format!("column {column} out of range")));
            }
            self.pending_column = Some(column);
        }
        Ok(())
    }

    fn fail(&mut self, message: String) -> SessionError {
        self.error = Some(message.clone());
        SessionError::Engine(message)
    }

    fn commit(&mut self, mv: Move) -> Result<(), SessionError> {
        let point = self
            .board
            .play(mv)
            .map_err(|e| SessionError::Invalid(e.to_string()))?;
        self.moves.push([mv.column, mv.reply]);
        if !self.is_over() {
            let observed = match &mut self.engine {
                Engine::A(a) => a.observe(&self.board, point),
                Engine::B(b) => b.observe(&self.board, point),
            };
            observed.map_err(|e| self.fail(e.to_string()))?;
        }
        Ok(())
    }

    /// Applies the human's move and the engine's answer.
    pub fn play(&mut self, play: &Play) -> Result<Option<Play>, SessionError> {
        if let Some(e) = &self.error {
            return Err(SessionError::Conflict(format!(
                "the engine failed earlier: {e}"
            )));
        }
        if let Some(cause) = self.board.terminal() {
            return Err(SessionError::Conflict(format!(
                "the game is over ({cause})"
            )));
        }
        let kind = self.rules.kind;
        let (reply_field, wrong_field) = match kind {
            GameKind::A => (play.row, play.tier.map(|_| "tier")),
            GameKind::B => (play.tier, play.row.map(|_| "row")),
        };
        if let Some(field) = wrong_field {
            return Err(SessionError::Invalid(format!(
                "{field} does not apply to the {kind}-game"
            )));
        }
        match self.human {
            Side::A => {
                if reply_field.is_some() {
                    return Err(SessionError::Conflict(
                        "the human plays A: it is A's turn to choose a column".into(),
                    ));
                }
                let column = play
                    .column
                    .ok_or_else(|| SessionError::Invalid("missing column".into()))?;
                if column > self.board.len() {
                    return Err(SessionError::Invalid(format!(
                        "column {column} out of range 0..={}",
                        self.board.len()
                    )));
                }
                let Engine::B(b) = &mut self.engine else {
                    unreachable!("engine plays B")
                };
                let reply = b
                    .reply(&self.board, column)
                    .map_err(|e| self.fail(e.to_string()))?;
                if let Err(e) = self.board.validate(Move { column, reply }) {
                    return Err(self.fail(format!("illegal reply {reply}: {e}")));
                }
                self.commit(Move { column, reply })?;
                Ok(Some(Play::reply(kind, reply)))
            }
            Side::B => {
                if play.column.is_some() {
                    return Err(SessionError::Conflict(
                        "the human plays B: the engine chooses columns".into(),
                    ));
                }
                let reply = reply_field.ok_or_else(|| {
                    SessionError::Invalid(format!(
                        "missing {}",
                        if kind == GameKind::A { "row" } else { "tier" }
                    ))
                })?;
                let column = self
                    .pending_column
                    .expect("a running game with engine A has a pending column");
                let mv = Move { column, reply };
                self.board
                    .validate(mv)
                    .map_err(|e| SessionError::Invalid(e.to_string()))?;
                self.commit(mv)?;
                self.engine_proposes()?;
                Ok(self.pending_column.map(Play::column))
            }
        }
    }

    pub fn transcript(&self) -> Transcript {
        let (a, b) = match self.human {
            Side::A => ("human".to_string(), self.engine_id.clone()),
            Side::B => (self.engine_id.clone(), "human".to_string()),
        };
        let mut t = Transcript::from_board(
            &self.board,
            self.moves.clone(),
            Strategies { a, b },
            Some(self.seed),
        );
        if !self.is_over() {
            t.result.cause = if self.error.is_some() {
                Cause::Error
            } else {
                Cause::InProgress
            };
            t.result.diagnostic = self.error.clone();
        }
        t
    }

    pub fn view(&self) -> StateView {
        view_of(
            &self.id,
            self.human,
            &self.engine_id,
            self.seed,
            &self.board,
            self.transcript(),
            self.pending_column,
            self.error.clone(),
        )
    }
}

/// Builds the state view from a board; shared with the replay check.
#[allow(clippy::too_many_arguments)]
pub fn view_of(
    id: &str,
    human: Side,
    engine: &str,
    seed: u64,
    board: &Board,
    transcript: Transcript,
    pending_column: Option<usize>,
    error: Option<String>,
) -> StateView {
    let rules = board.rules();
    let ys = board.ys();
    let ties = rules.kind == GameKind::B;
    let up_run = up_run_witness(ys, ties);
    let down_run = down_run_witness(ys);
    let terminal = board.terminal();
    let status = if error.is_some() {
        Status::Error
    } else if terminal.is_some() {
        Status::Over
    } else {
        Status::InProgress
    };
    let (to_move, awaiting) = match status {
        Status::InProgress if pending_column.is_some() => (
            Some(Side::B),
            Some(if ties { "tier" } else { "row" }.to_string()),
        ),
        Status::InProgress => (Some(Side::A), Some("column".to_string())),
        _ => (None, None),
    };
    StateView {
        id: id.to_string(),
        kind: rules.kind,
        m: rules.m,
        k: rules.k,
        human,
        engine: engine.to_string(),
        seed,
        turn: board.len(),
        points: ys.to_vec(),
        played_at: board.ids().to_vec(),
        longest_up_run: up_run.len(),
        longest_down_run: down_run.len(),
        up_run,
        down_run,
        status,
        cause: terminal.map(|c| c.to_string()),
        to_move,
        awaiting,
        pending_column: if status == Status::InProgress {
            pending_column
        } else {
            None
        },
        error,
        transcript,
    }
}

/// Default strategy behind non-optimal hints for the human's side.
pub fn default_hint_strategy(rules: &Rules, side: Side) -> &'static str {
    match (side, rules.kind, rules.k) {
        (Side::A, GameKind::A, 3) => "a:combined",
        (Side::A, GameKind::B, _) => "a:halving",
        (Side::B, GameKind::A, 3) => "b:fracturing",
        (Side::B, GameKind::B, _) => "b:tiers",
        (Side::A, _, _) => "a:random",
        (Side::B, _, _) => "b:random",
    }
}

/// What a hint needs from a session, detached so the search can run
/// without holding the session.
#[derive(Debug, Clone)]
pub struct HintRequest {
    pub rules: Rules,
    pub human: Side,
    pub seed: u64,
    pub board: Board,
    pub moves: Vec<[usize; 2]>,
    pub pending_column: Option<usize>,
}

impl HintRequest {
    pub fn of(session: &Session) -> Result<Self, SessionError> {
        if let Some(cause) = session.board.terminal() {
            return Err(SessionError::Conflict(format!(
                "the game is over ({cause})"
            )));
        }
        Ok(HintRequest {
            rules: session.rules,
            human: session.human,
            seed: session.seed,
            board: session.board.clone(),
            moves: session.moves.clone(),
            pending_column: session.pending_column,
        })
    }

    /// The solver's move if it finishes within `budget`.
    pub fn optimal(
        &self,
        solver: &mut Solver,
        budget: Duration,
    ) -> Result<Option<Hint>, SolveError> {
        let budget = Budget {
            time: Some(budget),
            nodes: None,
        };
        let ys = self.board.ys();
        let play = match self.human {
            Side::A => match solver.best_a_move_within(ys, budget) {
                Ok(column) => Move { column, reply: 0 },
                Err(SolveError::BudgetExceeded | SolveError::TooLarge(_)) => return Ok(None),
                Err(e) => return Err(e),
            },
            Side::B => {
                let column = self.pending_column.expect("human B has a pending column");
                match solver.best_b_reply_within(ys, column, budget) {
                    Ok(reply) => Move { column, reply },
                    Err(SolveError::BudgetExceeded | SolveError::TooLarge(_)) => return Ok(None),
                    Err(e) => return Err(e),
                }
            }
        };
        let value = match self.human {
            // A's best column keeps the position's value
            Side::A => solver
                .value_within(ys, budget)
                .map(|v| self.board.len() + v),
            Side::B => {
                let mut next = self.board.clone();
                next.play(play)
                    .map_err(|e| SolveError::InvalidPosition(e.to_string()))?;
                solver
                    .value_within(next.ys(), budget)
                    .map(|v| next.len() + v)
            }
        };
        let value = match value {
            Ok(v) => v,
            Err(SolveError::BudgetExceeded) => return Ok(None),
            Err(e) => return Err(e),
        };
        let play = match self.human {
            Side::A => Play::column(play.column),
            Side::B => Play::reply(self.rules.kind, play.reply),
        };
        Ok(Some(Hint {
            play,
            source: HintSource::Optimal,
            value: Some(value),
            strategy: None,
        }))
    }

    /// The move of `strategy` (for the human's side), replayed through the
    /// game so far. If the human left the strategy's line earlier, the hint
    /// comes from a random strategy seeded by the session seed and turn.
    pub fn from_strategy(
        &self,
        registry: &StrategyRegistry,
        strategy: Option<&str>,
    ) -> Result<Hint, SessionError> {
        let requested = strategy.unwrap_or_else(|| default_hint_strategy(&self.rules, self.human));
        let id = seeded_id(requested, Some(self.seed));
        let followed = match self.human {
            Side::A => {
                let mut a = registry
                    .create_a(&id, &self.rules)
                    .map_err(|e| SessionError::Invalid(e.to_string()))?;
                self.follow_a(a.as_mut()).map(|c| (Play::column(c), a.id()))
            }
            Side::B => {
                let mut b = registry
                    .create_b(&id, &self.rules)
                    .map_err(|e| SessionError::Invalid(e.to_string()))?;
                self.follow_b(b.as_mut())
                    .map(|r| (Play::reply(self.rules.kind, r), b.id()))
            }
        };
        let (play, used) = match followed {
            Some(found) => found,
            None => {
                let seed = self.seed.wrapping_add(self.board.len() as u64);
                match self.human {
                    Side::A => {
                        let mut a = registry
                            .create_a(&format!("a:random({seed})"), &self.rules)
                            .map_err(|e| SessionError::Invalid(e.to_string()))?;
                        let c = a
                            .next_column(&self.board)
                            .map_err(|e| SessionError::Engine(e.to_string()))?;
                        (Play::column(c), a.id())
                    }
                    Side::B => {
                        let mut b = registry
                            .create_b(&format!("b:random({seed})"), &self.rules)
                            .map_err(|e| SessionError::Invalid(e.to_string()))?;
                        let column = self.pending_column.expect("human B has a pending column");
                        let r = b
                            .reply(&self.board, column)
                            .map_err(|e| SessionError::Engine(e.to_string()))?;
                        (Play::reply(self.rules.kind, r), b.id())
                    }
                }
            }
        };
        Ok(Hint {
            play,
            source: HintSource::Strategy,
            value: None,
            strategy: Some(used),
        })
    }

    /// Replays the game with `a` as A; `None` once a column differs.
    fn follow_a(&self, a: &mut dyn AStrategy) -> Option<usize> {
        let mut board = Board::new(self.rules);
        for &[column, reply] in &self.moves {
            if a.next_column(&board).ok()? != column {
                return None;
            }
            let point = board.play(Move { column, reply }).ok()?;
            if board.terminal().is_none() {
                a.observe(&board, point).ok()?;
            }
        }
        a.next_column(&board).ok()
    }

    /// Replays the game with `b` as B; `None` once a reply differs.
    fn follow_b(&self, b: &mut dyn BStrategy) -> Option<usize> {
        let mut board = Board::new(self.rules);
        for &[column, reply] in &self.moves {
            if b.reply(&board, column).ok()? != reply {
                return None;
            }
            let point = board.play(Move { column, reply }).ok()?;
            if board.terminal().is_none() {
                b.observe(&board, point).ok()?;
            }
        }
        b.reply(&board, self.pending_column?).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn create(
        kind: GameKind,
        m: usize,
        k: usize,
        human: Side,
        engine: &str,
    ) -> Result<Session, SessionError> {
        let req = CreateGame {
            kind,
            m,
            k,
            human,
            engine: engine.into(),
            seed: Some(3),
        };
        Session::create(
            "g1".into(),
            &req,
            &StrategyRegistry::standard(),
            Duration::from_secs(2),
        )
    }

    #[test]
    fn engine_must_play_the_other_side() {
        assert!(matches!(
            create(GameKind::A, 3, 3, Side::A, "a:random"),
            Err(SessionError::Invalid(_))
        ));
        assert!(matches!(
            create(GameKind::A, 3, 3, Side::B, "b:random"),
            Err(SessionError::Invalid(_))
        ));
        assert!(create(GameKind::A, 3, 3, Side::A, "b:random").is_ok());
    }

    #[test]
    fn human_b_answers_pending_columns() {
        let mut s = create(GameKind::A, 4, 3, Side::B, "a:middling").unwrap();
        assert_eq!(s.pending_column(), Some(0));
        let engine = s
            .play(&Play {
                row: Some(0),
                ..Play::default()
            })
            .unwrap();
        assert_eq!(engine.and_then(|p| p.column), s.pending_column());
        assert!(matches!(
            s.play(&Play::column(0)),
            Err(SessionError::Conflict(_))
        ));
        assert!(matches!(
            s.play(&Play {
                row: Some(9),
                ..Play::default()
            }),
            Err(SessionError::Invalid(_))
        ));
        assert!(matches!(
            s.play(&Play {
                tier: Some(1),
                ..Play::default()
            }),
            Err(SessionError::Invalid(_))
        ));
    }

    #[test]
    fn view_matches_replayed_transcript() {
        let mut s = create(GameKind::B, 4, 3, Side::A, "b:tiers").unwrap();
        while !s.is_over() {
            s.play(&Play::column(s.board().len() / 2)).unwrap();
        }
        let view = s.view();
        let board = view.transcript.replay().unwrap();
        let again = view_of(
            "g1",
            Side::A,
            "b:tiers",
            3,
            &board,
            view.transcript.clone(),
            None,
            None,
        );
        assert_eq!(view, again);
        assert_eq!(view.status, Status::Over);
        assert_eq!(view.longest_up_run, 4);
    }

    #[test]
    fn strategy_hints_follow_the_game_or_fall_back() {
        let mut s = create(GameKind::A, 5, 3, Side::A, "b:random").unwrap();
        let registry = StrategyRegistry::standard();
        let hint = HintRequest::of(&s)
            .unwrap()
            .from_strategy(&registry, None)
            .unwrap();
        assert_eq!(hint.strategy.as_deref(), Some("a:combined"));
        s.play(&hint.play).unwrap();
        let next = HintRequest::of(&s)
            .unwrap()
            .from_strategy(&registry, None)
            .unwrap();
        assert_eq!(next.strategy.as_deref(), Some("a:combined"));

        let mut off = create(GameKind::A, 5, 3, Side::A, "b:random").unwrap();
        off.play(&Play::column(0)).unwrap();
        off.play(&Play::column(0)).unwrap();
        let hint = HintRequest::of(&off)
            .unwrap()
            .from_strategy(&registry, None)
            .unwrap();
        assert!(hint.strategy.is_some());
    }
}
