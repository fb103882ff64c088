//! Golden traces: two worked examples replayed move for move.
//!
//! The first drives the f-Middling mode with `f = (3,2,1)` through three
//! deviations; the second drives the w-Barb mode with `w = 4` through a
//! step-down and into a barb. Points are given by coordinates and labelled
//! in play order; each example records a check per documented fact, and
//! passes when every check's actual value equals the expected one.

use std::collections::BTreeSet;

use crate::game::{Board, Move, PointId, Rules};
use crate::harness::transcript::{Strategies, Transcript};
use crate::harness::HarnessError;
use crate::strategy::Frame;
use crate::strategy_a::{MiddlingEvent, MiddlingMode, WBarbEvent, WBarbMode};

/// One documented fact and what the replay produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCheck {
    pub step: String,
    pub expected: String,
    pub actual: String,
}

impl GoldenCheck {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

/// A replayed example.
#[derive(Debug, Clone)]
pub struct GoldenTrace {
    pub name: &'static str,
    pub transcript: Transcript,
    pub checks: Vec<GoldenCheck>,
}

impl GoldenTrace {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(GoldenCheck::pass)
    }

    pub fn failures(&self) -> Vec<&GoldenCheck> {
        self.checks.iter().filter(|c| !c.pass()).collect()
    }
}

/// Moves that place points at the given coordinates in order.
pub fn moves_from_coordinates(points: &[(f64, f64)]) -> Vec<[usize; 2]> {
    points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            let before = &points[..i];
            [
                before.iter().filter(|p| p.0 < x).count(),
                before.iter().filter(|p| p.1 < y).count(),
            ]
        })
        .collect()
}

struct Recorder {
    labels: Vec<&'static str>,
    checks: Vec<GoldenCheck>,
}

impl Recorder {
    fn check(&mut self, step: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        self.checks.push(GoldenCheck {
            step: step.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn set(&self, ids: &[PointId]) -> String {
        let names: BTreeSet<&str> = ids.iter().map(|&p| self.labels[p]).collect();
        format!("{{{}}}", names.into_iter().collect::<Vec<_>>().join(","))
    }

    fn expected_set(&self, names: &[&str]) -> String {
        let names: BTreeSet<&str> = names.iter().copied().collect();
        format!("{{{}}}", names.into_iter().collect::<Vec<_>>().join(","))
    }

    fn point(&self, p: Option<PointId>) -> String {
        p.map_or("corner".to_string(), |p| self.labels[p].to_string())
    }
}

/// Points of the f-Middling example in play order.
const MIDDLING_POINTS: [(f64, f64); 19] = [
    (0.5, 0.5),
    (11.5, 9.5),
    (11.0, 9.25),
    (1.0, 1.0),
    (5.0, 4.8),
    (10.5, 9.0),
    (8.5, 7.5),
    (10.0, 8.75),
    (9.5, 8.5),
    (9.75, 8.0),
    (1.5, 1.5),
    (4.0, 4.0),
    (3.0, 3.0),
    (2.0, 2.0),
    (2.5, 2.5),
    (2.25, 3.5),
    (7.5, 6.4),
    (6.0, 5.6),
    (6.75, 7.0),
];

/// Expected S, N, W and the active segment's ends after a turn.
type Checkpoint = (
    &'static [&'static str],
    &'static [&'static str],
    &'static [&'static str],
    &'static str,
    &'static str,
);

/// The f-Middling example: nine points extend `S`, then deviations on
/// turns 10 and 16 shrink the active segment and turn 19 ends the mode.
pub fn middling_example() -> Result<GoldenTrace, HarnessError> {
    const LABELS: [&str; 19] = [
        "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16",
        "17", "18", "19",
    ];
    let rules = Rules::a(20, 3);
    let moves = moves_from_coordinates(&MIDDLING_POINTS);
    let mut rec = Recorder {
        labels: LABELS.to_vec(),
        checks: Vec::new(),
    };
    let mut mode = MiddlingMode::new(vec![3, 2, 1]);
    let mut board = Board::new(rules);
    for (i, &[column, row]) in moves.iter().enumerate() {
        let turn = i + 1;
        let s = mode.s(&board);
        let gap = s.iter().filter(|&&p| board.x(p) < column).count();
        let played = if mode.middlemost_gaps().contains(&gap) {
            mode.play_gap(&board, gap).to_string()
        } else {
            format!("gap {gap} is not middlemost")
        };
        rec.check(format!("turn {turn}: column"), column, played);
        let id = board.play(Move { column, reply: row })?;
        let event = match mode.observe(&board, id)? {
            MiddlingEvent::Extended => "extends S".to_string(),
            MiddlingEvent::Deviated { t } => format!("deviates, t = {t}"),
            MiddlingEvent::Exit { above, .. } => {
                format!(
                    "exits, t = {}, {}",
                    mode.t(),
                    if above { "above" } else { "below" }
                )
            }
        };
        let expected = match turn {
            10 => "deviates, t = 1",
            16 => "deviates, t = 2",
            19 => "exits, t = 3, above",
            _ => "extends S",
        };
        rec.check(format!("turn {turn}: reply"), expected, event);
        let checkpoint: Option<Checkpoint> = match turn {
            9 => Some((
                &["1", "2", "3", "4", "5", "6", "7", "8", "9"],
                &[],
                &[],
                "corner",
                "corner",
            )),
            10 => Some((
                &["1", "4", "5", "7"],
                &["9", "8", "6", "3", "2"],
                &["10"],
                "corner",
                "9",
            )),
            16 => Some((
                &["5", "7", "12"],
                &["9", "8", "6", "3", "2", "1", "4", "11", "14", "15", "13"],
                &["10", "16"],
                "13",
                "9",
            )),
            // 18 extended S on its turn, so it belongs to S at the exit
            19 => Some((
                &["5", "7", "12", "17", "18"],
                &["9", "8", "6", "3", "2", "1", "4", "11", "14", "15", "13"],
                &["10", "16"],
                "13",
                "9",
            )),
            _ => None,
        };
        if let Some((s, n, w, lower, upper)) = checkpoint {
            let (lo, hi) = mode.segment();
            rec.check(
                format!("after turn {turn}: S"),
                rec.expected_set(s),
                rec.set(&mode.s(&board)),
            );
            rec.check(
                format!("after turn {turn}: N"),
                rec.expected_set(n),
                rec.set(mode.n()),
            );
            rec.check(
                format!("after turn {turn}: W"),
                rec.expected_set(w),
                rec.set(mode.w()),
            );
            rec.check(
                format!("after turn {turn}: segment"),
                format!("{lower}..{upper}"),
                format!("{}..{}", rec.point(lo), rec.point(hi)),
            );
        }
    }
    let strategies = Strategies {
        a: "a:middling".into(),
        b: "scripted".into(),
    };
    let transcript = Transcript::from_board(&board, moves, strategies, None);
    Ok(GoldenTrace {
        name: "middling example, f = (3,2,1)",
        transcript,
        checks: rec.checks,
    })
}

/// Points of the w-Barb example: the bottom wire 1..7, the upper spike 8,
/// the top wire 9..13 and the lower spike q1, then B's two replies.
const WBARB_POINTS: [(f64, f64); 16] = [
    (1.0, 1.0),
    (1.5, 2.0),
    (2.0, 3.0),
    (2.5, 4.0),
    (3.0, 5.0),
    (3.7, 6.0),
    (4.5, 6.7),
    (6.0, 7.5),
    (7.0, 7.8),
    (8.0, 8.1),
    (9.0, 8.4),
    (10.0, 8.7),
    (11.0, 9.0),
    (8.5, 7.1),
    (6.5, 4.5),
    (3.35, 3.5),
];

/// The w-Barb example with `w = 4`: a reply three notches below `r_1`
/// steps down, a reply one notch below `r_2` forms the barb.
pub fn wbarb_example() -> Result<GoldenTrace, HarnessError> {
    const LABELS: [&str; 16] = [
        "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "q1", "q2", "q",
    ];
    let rules = Rules::a(20, 3);
    let moves = moves_from_coordinates(&WBARB_POINTS);
    let mut rec = Recorder {
        labels: LABELS.to_vec(),
        checks: Vec::new(),
    };
    let mut board = Board::new(rules);
    let play = |board: &mut Board, [column, reply]: [usize; 2]| board.play(Move { column, reply });
    for &mv in &moves[..14] {
        play(&mut board, mv)?;
    }
    // w = 4 is below the width the bound asks for with |U| = 7; the example
    // only illustrates the moves, so the width check is skipped
    let mut mode = WBarbMode::unchecked(
        &board,
        Frame::PLAIN,
        Vec::new(),
        (0..7).collect(),
        7,
        13,
        (8..13).collect(),
        4,
    )?;
    rec.check("entry: r-hat 1", "9", rec.point(mode.levels()[0].r_hat));

    rec.check("turn 1: column", moves[14][0], mode.next_column(&board));
    let q2 = play(&mut board, moves[14])?;
    let d = Frame::PLAIN.rows_between(
        &board,
        mode.u(),
        Frame::PLAIN.y(&board, q2),
        Frame::PLAIN.y(&board, 7),
    );
    rec.check("turn 1: notches below r1", 3, d);
    rec.check(
        "turn 1: reply",
        "step down to level 2",
        describe(mode.observe(&board, q2)?),
    );
    let level = mode.levels()[1].clone();
    rec.check("level 2: r2", "5", rec.point(Some(level.r)));
    rec.check("level 2: r-hat 2", "6", rec.point(level.r_hat));
    rec.check(
        "level 2: V2",
        rec.expected_set(&["6", "7", "8", "9", "10", "11", "12", "13"]),
        rec.set(&level.v),
    );
    rec.check(
        "level 2: lost",
        rec.expected_set(&["q1"]),
        rec.set(mode.lost()),
    );

    rec.check("turn 2: column", moves[15][0], mode.next_column(&board));
    let q = play(&mut board, moves[15])?;
    let d = Frame::PLAIN.rows_between(
        &board,
        mode.u(),
        Frame::PLAIN.y(&board, q),
        Frame::PLAIN.y(&board, level.r),
    );
    rec.check("turn 2: notches below r2", 1, d);
    rec.check(
        "turn 2: reply",
        "barb formed",
        describe(mode.observe(&board, q)?),
    );
    let barb = mode.barb().cloned().expect("a barb was just formed");
    rec.check(
        "barb: spikes",
        "5,q2",
        format!("{},{}", rec.point(Some(barb.w)), rec.point(Some(barb.z))),
    );
    rec.check(
        "barb: bottom wire",
        rec.expected_set(&["1", "2", "3", "q"]),
        rec.set(&barb.u),
    );
    rec.check(
        "barb: top wire",
        rec.expected_set(&["6", "7", "8", "9", "10", "11", "12", "13"]),
        rec.set(&barb.v),
    );
    rec.check(
        "barb: lost",
        rec.expected_set(&["q1", "4", "5"]),
        rec.set(mode.lost()),
    );
    // the barb column lies between q and r-hat 2
    rec.check("barb: column", board.x(q) + 1, mode.next_column(&board));
    rec.check(
        "barb: r-hat 2 next to the column",
        board.x(q) + 1,
        board.x(5),
    );

    let strategies = Strategies {
        a: "a:wbarb".into(),
        b: "scripted".into(),
    };
    let transcript = Transcript::from_board(&board, moves, strategies, None);
    Ok(GoldenTrace {
        name: "w-barb example, w = 4",
        transcript,
        checks: rec.checks,
    })
}

fn describe(event: WBarbEvent) -> String {
    match event {
        WBarbEvent::Extended => "extends the top wire".into(),
        WBarbEvent::SteppedDown { level } => format!("step down to level {level}"),
        WBarbEvent::BarbFormed => "barb formed".into(),
        WBarbEvent::Wired => "joins a wire".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_become_moves() {
        assert_eq!(
            moves_from_coordinates(&[(0.5, 0.5), (0.2, 0.7), (0.3, 0.1)]),
            vec![[0, 0], [0, 1], [1, 0]]
        );
    }

    #[test]
    fn middling_example_replays() {
        let trace = middling_example().unwrap();
        assert!(trace.pass(), "{:#?}", trace.failures());
        trace.transcript.replay().unwrap();
    }

    #[test]
    fn wbarb_example_replays() {
        let trace = wbarb_example().unwrap();
        assert!(trace.pass(), "{:#?}", trace.failures());
        trace.transcript.replay().unwrap();
    }
}
