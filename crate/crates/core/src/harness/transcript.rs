//! Match transcripts: the canonical JSON record of one game.
//!
//! ```json
//! {"v":1,"kind":"A","m":3,"k":3,"moves":[[0,0],[1,0]],
//!  "strategies":{"a":"a:optimal","b":"b:optimal"},"seed":null,
//!  "result":{"turns":2,"cause":"up-run","state":[2,1]}}
//! ```
//!
//! Field order is fixed by the struct layout. `state` is the final position
//! (ranks or tiers in x-order) and is checked on replay.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Board, GameError, GameKind, Move, Rules, TerminationCause};

pub const TRANSCRIPT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("unsupported transcript version {0}")]
    Version(u32),
    #[error("invalid transcript: {0}")]
    Invalid(String),
    #[error("move {turn} is illegal: {source}")]
    IllegalMove { turn: usize, source: GameError },
    #[error("replay disagrees with the recorded result: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// How a match stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cause {
    UpRun,
    DownRun,
    /// The turn limit was hit before the game ended.
    MaxTurns,
    /// A strategy broke its contract; see `diagnostic`.
    Error,
    /// A game still being played (service sessions).
    InProgress,
}

impl From<TerminationCause> for Cause {
    fn from(c: TerminationCause) -> Self {
        match c {
            TerminationCause::UpRun => Cause::UpRun,
            TerminationCause::DownRun => Cause::DownRun,
        }
    }
}

impl std::fmt::Display for Cause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Cause::UpRun => "up-run",
            Cause::DownRun => "down-run",
            Cause::MaxTurns => "max-turns",
            Cause::Error => "error",
            Cause::InProgress => "in-progress",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategies {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub turns: usize,
    pub cause: Cause,
    pub state: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub v: u32,
    pub kind: GameKind,
    pub m: usize,
    pub k: usize,
    pub moves: Vec<[usize; 2]>,
    pub strategies: Strategies,
    pub seed: Option<u64>,
    pub result: MatchResult,
}

impl Transcript {
    /// A transcript of the game on `board`, with its cause taken from the
    /// board (or `MaxTurns` when it is still running).
    pub fn from_board(
        board: &Board,
        moves: Vec<[usize; 2]>,
        strategies: Strategies,
        seed: Option<u64>,
    ) -> Self {
        let rules = board.rules();
        let cause = board.terminal().map_or(Cause::MaxTurns, Cause::from);
        Transcript {
            v: TRANSCRIPT_VERSION,
            kind: rules.kind,
            m: rules.m,
            k: rules.k,
            moves,
            strategies,
            seed,
            result: MatchResult {
                turns: board.len(),
                cause,
                state: board.ys().to_vec(),
                diagnostic: None,
            },
        }
    }

    pub fn rules(&self) -> Result<Rules, TranscriptError> {
        Rules::new(self.kind, self.m, self.k).map_err(|e| TranscriptError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcripts always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts always serialize")
    }

    /// Parse and check the version; does not replay.
    pub fn from_json(s: &str) -> Result<Self, TranscriptError> {
        let t: Transcript = serde_json::from_str(s)?;
        if t.v != TRANSCRIPT_VERSION {
            return Err(TranscriptError::Version(t.v));
        }
        Ok(t)
    }

    /// Play the moves from the empty board, checking legality, the turn
    /// count, the final state and the cause.
    pub fn replay(&self) -> Result<Board, TranscriptError> {
        let mut board = Board::new(self.rules()?);
        for (turn, &[column, reply]) in self.moves.iter().enumerate() {
            board
                .play(Move { column, reply })
                .map_err(|source| TranscriptError::IllegalMove {
                    turn: turn + 1,
                    source,
                })?;
        }
        let r = &self.result;
        if r.turns != board.len() {
            return Err(TranscriptError::Mismatch(format!(
                "{} turns recorded, {} played",
                r.turns,
                board.len()
            )));
        }
        if r.state != board.ys() {
            return Err(TranscriptError::Mismatch(format!(
                "final state {:?} != {:?}",
                r.state,
                board.ys()
            )));
        }
        let cause = board.terminal().map(Cause::from);
        let consistent = match r.cause {
            Cause::UpRun | Cause::DownRun => cause == Some(r.cause),
            Cause::MaxTurns | Cause::Error | Cause::InProgress => cause.is_none(),
        };
        if !consistent {
            let actual = cause.map_or("running".to_string(), |c| c.to_string());
            return Err(TranscriptError::Mismatch(format!(
                "recorded cause {}, replay gives {actual}",
                r.cause
            )));
        }
        Ok(board)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Transcript {
        let mut board = Board::new(Rules::a(2, 3));
        board
            .play(Move {
                column: 0,
                reply: 0,
            })
            .unwrap();
        board
            .play(Move {
                column: 1,
                reply: 1,
            })
            .unwrap();
        Transcript::from_board(
            &board,
            vec![[0, 0], [1, 1]],
            Strategies {
                a: "a:random(1)".into(),
                b: "b:random(2)".into(),
            },
            Some(7),
        )
    }

    #[test]
    fn canonical_field_order() {
        let json = sample().to_json();
        assert_eq!(
            json,
            r#"{"v":1,"kind":"A","m":2,"k":3,"moves":[[0,0],[1,1]],"strategies":{"a":"a:random(1)","b":"b:random(2)"},"seed":7,"result":{"turns":2,"cause":"up-run","state":[1,2]}}"#
        );
    }

    #[test]
    fn round_trip_and_replay() {
        let t = sample();
        let back = Transcript::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.replay().unwrap().ys(), &[1, 2]);
    }

    #[test]
    fn replay_detects_tampering() {
        let mut t = sample();
        t.result.state = vec![2, 1];
        assert!(matches!(t.replay(), Err(TranscriptError::Mismatch(_))));
        let mut t = sample();
        t.result.cause = Cause::DownRun;
        assert!(t.replay().is_err());
        let mut t = sample();
        t.moves[1] = [5, 0];
        assert!(matches!(
            t.replay(),
            Err(TranscriptError::IllegalMove { turn: 2, .. })
        ));
        let mut t = sample();
        t.v = 2;
        assert!(matches!(
            Transcript::from_json(&t.to_json()),
            Err(TranscriptError::Version(2))
        ));
    }
}
