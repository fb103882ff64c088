//! Order-type game model.
//!
//! Real coordinates never matter in either game: only the relative order of
//! the points does. A position of the A-game is therefore a permutation (the
//! y-ranks of the points listed in x-order) and a position of the B-game is a
//! list of tiers in x-order. Moves are gap indices: column `c` is the gap
//! between the `c`-th and `c+1`-th point in x-order, row `r` the gap between
//! ranks `r` and `r+1`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Play-order index of a point (0-based).
pub type PointId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("column {column} out of range for {len} points")]
    ColumnOutOfRange { column: usize, len: usize },
    #[error("row {row} out of range for {len} points")]
    RowOutOfRange { row: usize, len: usize },
    #[error("tier {tier} out of range 1..={max}")]
    TierOutOfRange { tier: usize, max: usize },
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("game is already over ({0})")]
    GameOver(TerminationCause),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameKind {
    /// B picks an arbitrary y-value each turn.
    A,
    /// B picks one of the tiers `1..k`.
    B,
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameKind::A => f.write_str("A"),
            GameKind::B => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for GameKind {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(GameKind::A),
            "b" | "B" => Ok(GameKind::B),
            other => Err(GameError::InvalidParameters(format!(
                "unknown game kind {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminationCause {
    UpRun,
    DownRun,
}

impl fmt::Display for TerminationCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminationCause::UpRun => f.write_str("up-run"),
            TerminationCause::DownRun => f.write_str("down-run"),
        }
    }
}

/// Game kind plus targets: the game ends at an `m`-up-run or a `k`-down-run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rules {
    pub kind: GameKind,
    pub m: usize,
    pub k: usize,
}

impl Rules {
    pub fn new(kind: GameKind, m: usize, k: usize) -> Result<Self, GameError> {
        if m == 0 || k == 0 {
            return Err(GameError::InvalidParameters(
                "m and k must be at least 1".into(),
            ));
        }
        if kind == GameKind::B && k < 2 {
            return Err(GameError::InvalidParameters(
                "the B-game needs k >= 2".into(),
            ));
        }
        Ok(Rules { kind, m, k })
    }

    pub fn a(m: usize, k: usize) -> Self {
        Self::new(GameKind::A, m, k).expect("valid A-game parameters")
    }

    pub fn b(m: usize, k: usize) -> Self {
        Self::new(GameKind::B, m, k).expect("valid B-game parameters")
    }

    /// The classical Erdős–Szekeres number `(m-1)(k-1)+1`: any A-game ends
    /// no later than this many points.
    pub fn es(&self) -> usize {
        (self.m - 1) * (self.k - 1) + 1
    }

    /// Number of points after which the game is certainly over.
    pub fn max_points(&self) -> usize {
        match self.kind {
            GameKind::A => self.es(),
            // each tier holds at most m-1 points without a weak m-up-run
            GameKind::B => (self.m - 1) * (self.k - 1) + 1,
        }
    }

    pub fn terminal(&self, ys: &[u8]) -> Option<TerminationCause> {
        match self.kind {
            GameKind::A => is_terminal_ranked(ys, self.m, self.k),
            GameKind::B => {
                if longest_up_run(ys, true) >= self.m {
                    Some(TerminationCause::UpRun)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Rules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.m, self.k)
    }
}

/// Length of a longest increasing subsequence, weak when `ties_extend`.
pub fn longest_up_run<T: Ord + Copy>(values: &[T], ties_extend: bool) -> usize {
    let mut tails: Vec<T> = Vec::with_capacity(values.len());
    for &v in values {
        let pos = if ties_extend {
            tails.partition_point(|&t| t <= v)
        } else {
            tails.partition_point(|&t| t < v)
        };
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// Length of a longest strictly decreasing subsequence.
pub fn longest_down_run<T: Ord + Copy>(values: &[T]) -> usize {
    let mut tails: Vec<T> = Vec::with_capacity(values.len());
    for &v in values.iter().rev() {
        let pos = tails.partition_point(|&t| t < v);
        if pos == tails.len() {
            tails.push(v);
        } else {
            tails[pos] = v;
        }
    }
    tails.len()
}

/// Indices of one longest increasing subsequence (weak when
/// `ties_extend`), in increasing order.
pub fn up_run_witness<T: Ord + Copy>(values: &[T], ties_extend: bool) -> Vec<usize> {
    // tails[j]: index ending the best run of length j+1 found so far
    let mut tails: Vec<usize> = Vec::with_capacity(values.len());
    let mut prev: Vec<Option<usize>> = vec![None; values.len()];
    for (i, &v) in values.iter().enumerate() {
        let pos = if ties_extend {
            tails.partition_point(|&t| values[t] <= v)
        } else {
            tails.partition_point(|&t| values[t] < v)
        };
        prev[i] = pos.checked_sub(1).map(|p| tails[p]);
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    let mut run = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(i) = cur {
        run.push(i);
        cur = prev[i];
    }
    run.reverse();
    run
}

/// Indices of one longest strictly decreasing subsequence, in increasing
/// order.
pub fn down_run_witness<T: Ord + Copy>(values: &[T]) -> Vec<usize> {
    let reversed: Vec<T> = values.iter().rev().copied().collect();
    let n = values.len();
    let mut run: Vec<usize> = up_run_witness(&reversed, false)
        .into_iter()
        .map(|i| n - 1 - i)
        .collect();
    run.reverse();
    run
}

fn is_terminal_ranked(ranks: &[u8], m: usize, k: usize) -> Option<TerminationCause> {
    if longest_up_run(ranks, false) >= m {
        Some(TerminationCause::UpRun)
    } else if longest_down_run(ranks) >= k {
        Some(TerminationCause::DownRun)
    } else {
        None
    }
}

/// Insert a rank-`row+1` point at x-gap `column` into a permutation in place.
pub(crate) fn insert_rank(ranks: &mut Vec<u8>, column: usize, row: usize) {
    let r = row as u8;
    for v in ranks.iter_mut() {
        if *v > r {
            *v += 1;
        }
    }
    ranks.insert(column, r + 1);
}

/// An A-game position: y-ranks `1..=t` listed in x-order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RankedState {
    ranks: Vec<u8>,
}

impl RankedState {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(ranks: Vec<u8>) -> Result<Self, GameError> {
        let t = ranks.len();
        if t > u8::MAX as usize - 1 {
            return Err(GameError::NotPermutation(t));
        }
        let mut seen = vec![false; t + 1];
        for &r in &ranks {
            let r = r as usize;
            if r == 0 || r > t || seen[r] {
                return Err(GameError::NotPermutation(t));
            }
            seen[r] = true;
        }
        Ok(RankedState { ranks })
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Place a new point in x-gap `column` and y-gap `row`.
    pub fn insert(&self, column: usize, row: usize) -> Result<RankedState, GameError> {
        let t = self.len();
        if column > t {
            return Err(GameError::ColumnOutOfRange { column, len: t });
        }
        if row > t {
            return Err(GameError::RowOutOfRange { row, len: t });
        }
        let mut ranks = self.ranks.clone();
        insert_rank(&mut ranks, column, row);
        Ok(RankedState { ranks })
    }

    pub fn longest_up_run(&self) -> usize {
        longest_up_run(&self.ranks, false)
    }

    pub fn longest_down_run(&self) -> usize {
        longest_down_run(&self.ranks)
    }

    pub fn is_terminal(&self, m: usize, k: usize) -> Option<TerminationCause> {
        is_terminal_ranked(&self.ranks, m, k)
    }

    /// The image under a half-turn: x-order reversed, ranks complemented.
    pub fn rotated(&self) -> RankedState {
        let t = self.len() as u8;
        RankedState {
            ranks: self.ranks.iter().rev().map(|&r| t + 1 - r).collect(),
        }
    }

    pub fn quadrant_counts(&self, index: usize) -> Result<Quadrants, GameError> {
        let t = self.len();
        let &y = self
            .ranks
            .get(index)
            .ok_or(GameError::IndexOutOfRange { index, len: t })?;
        let mut q = Quadrants::default();
        for (i, &r) in self.ranks.iter().enumerate() {
            match (i.cmp(&index), r > y) {
                (std::cmp::Ordering::Equal, _) => {}
                (std::cmp::Ordering::Greater, true) => q.ne += 1,
                (std::cmp::Ordering::Greater, false) => q.se += 1,
                (std::cmp::Ordering::Less, true) => q.nw += 1,
                (std::cmp::Ordering::Less, false) => q.sw += 1,
            }
        }
        Ok(q)
    }

    /// For every point, the longest up-run and down-run having it as the
    /// left-most point.
    pub fn labels(&self) -> Vec<Label> {
        let t = self.len();
        let mut labels = vec![Label { up: 1, down: 1 }; t];
        for p in (0..t).rev() {
            for q in p + 1..t {
                if self.ranks[q] > self.ranks[p] {
                    labels[p].up = labels[p].up.max(labels[q].up + 1);
                } else {
                    labels[p].down = labels[p].down.max(labels[q].down + 1);
                }
            }
        }
        labels
    }

    /// A column from which every reply ends the game, for a non-terminal
    /// position with exactly `(m-1)(k-1)-1` points.
    ///
    /// The labels of such a position are distinct and miss exactly one cell
    /// of `[m-1] x [k-1]`. If the missing cell is not the top corner, the
    /// point labelled `(m-1,k-1)` starts both a long up-run and a long
    /// down-run and we play directly to its left; otherwise we play directly
    /// to the right of the point labelled `(1,1)`, which closes both the
    /// `(m-1)`-up-run and `(k-1)`-down-run formed by the maximal points.
    pub fn endgame_move(&self, m: usize, k: usize) -> Result<usize, GameError> {
        if m < 2 || k < 2 {
            return Err(GameError::Precondition("endgame needs m, k >= 2".into()));
        }
        let need = (m - 1) * (k - 1) - 1;
        if self.len() != need {
            return Err(GameError::Precondition(format!(
                "endgame needs exactly {need} points, have {}",
                self.len()
            )));
        }
        if let Some(cause) = self.is_terminal(m, k) {
            return Err(GameError::GameOver(cause));
        }
        let labels = self.labels();
        let mut present = vec![false; (m - 1) * (k - 1)];
        for l in &labels {
            present[(l.up - 1) * (k - 1) + (l.down - 1)] = true;
        }
        let missing = present
            .iter()
            .position(|&p| !p)
            .ok_or_else(|| GameError::Precondition("labels are not distinct".into()))?;
        let missing = Label {
            up: missing / (k - 1) + 1,
            down: missing % (k - 1) + 1,
        };
        let find = |target: Label| {
            labels
                .iter()
                .position(|&l| l == target)
                .ok_or_else(|| GameError::Precondition(format!("no point labelled {target}")))
        };
        if missing
            != (Label {
                up: m - 1,
                down: k - 1,
            })
        {
            find(Label {
                up: m - 1,
                down: k - 1,
            })
        } else {
            Ok(find(Label { up: 1, down: 1 })? + 1)
        }
    }
}

impl fmt::Display for RankedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ranks)
    }
}

/// Point counts in the four open quadrants around a point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadrants {
    pub ne: usize,
    pub nw: usize,
    pub sw: usize,
    pub se: usize,
}

/// `(i, j)`: longest up-run and longest down-run starting at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub up: usize,
    pub down: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.up, self.down)
    }
}

/// A B-game position: tiers in `1..k` listed in x-order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TieredState {
    tiers: Vec<u8>,
    k: usize,
}

impl TieredState {
    pub fn empty(k: usize) -> Self {
        TieredState {
            tiers: Vec::new(),
            k,
        }
    }

    pub fn new(tiers: Vec<u8>, k: usize) -> Result<Self, GameError> {
        if k < 2 {
            return Err(GameError::InvalidParameters("k must be at least 2".into()));
        }
        if let Some(&bad) = tiers.iter().find(|&&t| t == 0 || t as usize >= k) {
            return Err(GameError::TierOutOfRange {
                tier: bad as usize,
                max: k - 1,
            });
        }
        Ok(TieredState { tiers, k })
    }

    pub fn tiers(&self) -> &[u8] {
        &self.tiers
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tiers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiers.is_empty()
    }

    pub fn insert(&self, column: usize, tier: usize) -> Result<TieredState, GameError> {
        if column > self.len() {
            return Err(GameError::ColumnOutOfRange {
                column,
                len: self.len(),
            });
        }
        if tier == 0 || tier >= self.k {
            return Err(GameError::TierOutOfRange {
                tier,
                max: self.k - 1,
            });
        }
        let mut tiers = self.tiers.clone();
        tiers.insert(column, tier as u8);
        Ok(TieredState { tiers, k: self.k })
    }

    pub fn longest_up_run(&self) -> usize {
        longest_up_run(&self.tiers, true)
    }

    pub fn is_terminal(&self, m: usize) -> Option<TerminationCause> {
        (self.longest_up_run() >= m).then_some(TerminationCause::UpRun)
    }
}

/// Number of placed points strictly between two x-gaps.
pub fn separation(c1: usize, c2: usize) -> usize {
    c1.abs_diff(c2)
}

/// A position with point identities: what strategies and matches work on.
///
/// `ys` holds y-ranks (A-game) or tiers (B-game) in x-order, and `ids` the
/// play-order index of the point at each x-position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    rules: Rules,
    ids: Vec<PointId>,
    ys: Vec<u8>,
}

/// One turn: the column chosen by A and the row (A-game) or tier (B-game)
/// chosen by B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub column: usize,
    pub reply: usize,
}

impl Board {
    pub fn new(rules: Rules) -> Self {
        Board {
            rules,
            ids: Vec::new(),
            ys: Vec::new(),
        }
    }

    /// Board with points already placed (ids assigned in x-order).
    pub fn from_ranks(rules: Rules, state: &RankedState) -> Self {
        Board {
            rules,
            ids: (0..state.len()).collect(),
            ys: state.ranks().to_vec(),
        }
    }

    pub fn from_tiers(rules: Rules, state: &TieredState) -> Self {
        Board {
            rules,
            ids: (0..state.len()).collect(),
            ys: state.tiers().to_vec(),
        }
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn ys(&self) -> &[u8] {
        &self.ys
    }

    pub fn ids(&self) -> &[PointId] {
        &self.ids
    }

    pub fn ranked(&self) -> RankedState {
        RankedState {
            ranks: self.ys.clone(),
        }
    }

    pub fn tiered(&self) -> TieredState {
        TieredState {
            tiers: self.ys.clone(),
            k: self.rules.k,
        }
    }

    /// x-position (0-based) of a point.
    pub fn x(&self, id: PointId) -> usize {
        self.ids
            .iter()
            .position(|&p| p == id)
            .unwrap_or_else(|| panic!("unknown point {id}"))
    }

    /// y-rank or tier of a point.
    pub fn y(&self, id: PointId) -> u8 {
        self.ys[self.x(id)]
    }

    pub fn id_at(&self, xpos: usize) -> PointId {
        self.ids[xpos]
    }

    pub fn terminal(&self) -> Option<TerminationCause> {
        self.rules.terminal(&self.ys)
    }

    pub fn num_replies(&self) -> usize {
        match self.rules.kind {
            GameKind::A => self.len() + 1,
            GameKind::B => self.rules.k - 1,
        }
    }

    /// Reply values B may choose: rows `0..=t` or tiers `1..k`.
    pub fn replies(&self) -> std::ops::RangeInclusive<usize> {
        match self.rules.kind {
            GameKind::A => 0..=self.len(),
            GameKind::B => 1..=self.rules.k - 1,
        }
    }

    pub fn validate(&self, mv: Move) -> Result<(), GameError> {
        if let Some(cause) = self.terminal() {
            return Err(GameError::GameOver(cause));
        }
        let t = self.len();
        if mv.column > t {
            return Err(GameError::ColumnOutOfRange {
                column: mv.column,
                len: t,
            });
        }
        match self.rules.kind {
            GameKind::A if mv.reply > t => Err(GameError::RowOutOfRange {
                row: mv.reply,
                len: t,
            }),
            GameKind::B if mv.reply == 0 || mv.reply >= self.rules.k => {
                Err(GameError::TierOutOfRange {
                    tier: mv.reply,
                    max: self.rules.k - 1,
                })
            }
            _ => Ok(()),
        }
    }

    /// Apply a turn and return the id of the new point.
    pub fn play(&mut self, mv: Move) -> Result<PointId, GameError> {
        self.validate(mv)?;
        let id = self.len();
        match self.rules.kind {
            GameKind::A => insert_rank(&mut self.ys, mv.column, mv.reply),
            GameKind::B => self.ys.insert(mv.column, mv.reply as u8),
        }
        self.ids.insert(mv.column, id);
        Ok(id)
    }

    /// Points (in x-order) strictly inside the quadrant of `id` selected by
    /// `east` (right of it) and `north` (above it).
    pub fn quadrant(&self, id: PointId, north: bool, east: bool) -> Vec<PointId> {
        let px = self.x(id);
        let py = self.ys[px];
        self.ids
            .iter()
            .zip(&self.ys)
            .enumerate()
            .filter(|&(x, (_, &y))| x != px && (x > px) == east && (y > py) == north && y != py)
            .map(|(_, (&p, _))| p)
            .collect()
    }

    pub fn ne(&self, id: PointId) -> Vec<PointId> {
        self.quadrant(id, true, true)
    }
    pub fn nw(&self, id: PointId) -> Vec<PointId> {
        self.quadrant(id, true, false)
    }
    pub fn sw(&self, id: PointId) -> Vec<PointId> {
        self.quadrant(id, false, false)
    }
    pub fn se(&self, id: PointId) -> Vec<PointId> {
        self.quadrant(id, false, true)
    }

    /// Whether the given points form an up-run (weak for tiers).
    pub fn is_up_run(&self, points: &[PointId]) -> bool {
        let mut pts: Vec<(usize, u8)> = points.iter().map(|&p| (self.x(p), self.y(p))).collect();
        pts.sort_unstable();
        let weak = self.rules.kind == GameKind::B;
        pts.windows(2).all(|w| {
            if weak {
                w[0].1 <= w[1].1
            } else {
                w[0].1 < w[1].1
            }
        })
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn run_witnesses_are_runs_of_maximal_length() {
        let cases: [&[u8]; 5] = [
            &[],
            &[1],
            &[3, 1, 2, 5, 4],
            &[5, 4, 3, 2, 1],
            &[2, 2, 1, 2, 3, 1],
        ];
        for values in cases {
            for ties in [false, true] {
                let up = up_run_witness(values, ties);
                assert_eq!(up.len(), longest_up_run(values, ties), "{values:?}");
                assert!(up.windows(2).all(|w| w[0] < w[1]
                    && if ties {
                        values[w[0]] <= values[w[1]]
                    } else {
                        values[w[0]] < values[w[1]]
                    }));
            }
            let down = down_run_witness(values);
            assert_eq!(down.len(), longest_down_run(values), "{values:?}");
            assert!(down
                .windows(2)
                .all(|w| w[0] < w[1] && values[w[0]] > values[w[1]]));
        }
    }

    use super::*;

    fn rs(v: &[u8]) -> RankedState {
        RankedState::new(v.to_vec()).unwrap()
    }

    #[test]
    fn insert_examples() {
        assert_eq!(RankedState::empty().insert(0, 0).unwrap(), rs(&[1]));
        assert_eq!(rs(&[1]).insert(1, 1).unwrap(), rs(&[1, 2]));
        assert_eq!(rs(&[2, 1, 3]).insert(1, 2).unwrap(), rs(&[2, 3, 1, 4]));
        assert!(rs(&[1]).insert(2, 0).is_err());
        assert!(rs(&[1]).insert(0, 2).is_err());
    }

    #[test]
    fn run_examples() {
        assert_eq!(longest_up_run::<u8>(&[], true), 0);
        assert_eq!(longest_up_run(&[1, 2, 2, 3], true), 4);
        assert_eq!(longest_up_run(&[1, 2, 2, 3], false), 3);
        assert_eq!(longest_up_run(&[3, 1, 4, 2, 5], false), 3);
        assert_eq!(longest_down_run(&[5, 4, 1]), 3);
        assert_eq!(longest_down_run(&[2, 2, 1]), 2);
        assert_eq!(longest_down_run(&[3, 1, 4, 2, 5]), 2);
    }

    #[test]
    fn terminal_examples() {
        assert_eq!(
            rs(&[1, 2, 3]).is_terminal(3, 3),
            Some(TerminationCause::UpRun)
        );
        assert_eq!(rs(&[2, 1]).is_terminal(3, 3), None);
        assert_eq!(rs(&[2, 3, 1, 4]).is_terminal(4, 3), None);
        assert_eq!(
            rs(&[3, 2, 1]).is_terminal(3, 3),
            Some(TerminationCause::DownRun)
        );
    }

    #[test]
    fn quadrant_examples() {
        assert_eq!(rs(&[1]).quadrant_counts(0).unwrap(), Quadrants::default());
        let example = rs(&[1, 5, 6, 4, 3, 2]);
        assert_eq!(
            example.quadrant_counts(3).unwrap(),
            Quadrants {
                ne: 0,
                nw: 2,
                sw: 1,
                se: 2
            }
        );
        assert_eq!(
            rs(&[2, 1, 3]).quadrant_counts(0).unwrap(),
            Quadrants {
                ne: 1,
                nw: 0,
                sw: 0,
                se: 1
            }
        );
        assert!(rs(&[1]).quadrant_counts(1).is_err());
    }

    #[test]
    fn label_examples() {
        let l = |up, down| Label { up, down };
        assert_eq!(rs(&[1]).labels(), vec![l(1, 1)]);
        assert_eq!(rs(&[2, 1, 3]).labels(), vec![l(2, 2), l(2, 1), l(1, 1)]);
        assert_eq!(rs(&[1, 2]).labels(), vec![l(2, 1), l(1, 1)]);
    }

    #[test]
    fn endgame_examples() {
        let s = rs(&[2, 1, 3]);
        assert_eq!(s.endgame_move(3, 3).unwrap(), 0);
        for row in 0..=3 {
            assert!(s.insert(0, row).unwrap().is_terminal(3, 3).is_some());
        }
        let s = rs(&[1, 3, 2]);
        let c = s.endgame_move(3, 3).unwrap();
        for row in 0..=3 {
            assert!(s.insert(c, row).unwrap().is_terminal(3, 3).is_some());
        }
        assert!(rs(&[1, 2, 3]).endgame_move(3, 3).is_err());
        assert!(rs(&[1, 2]).endgame_move(3, 3).is_err());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation(0, 0), 0);
        assert_eq!(separation(0, 3), 3);
        assert_eq!(separation(1, 2), 1);
    }

    #[test]
    fn tiered_state() {
        let s = TieredState::empty(4)
            .insert(0, 1)
            .unwrap()
            .insert(1, 1)
            .unwrap();
        assert_eq!(s.tiers(), &[1, 1]);
        assert_eq!(s.longest_up_run(), 2);
        assert!(s.insert(0, 4).is_err());
        assert!(TieredState::new(vec![0], 3).is_err());
        assert_eq!(s.is_terminal(2), Some(TerminationCause::UpRun));
    }

    #[test]
    fn board_tracks_identities() {
        let mut b = Board::new(Rules::a(5, 4));
        let p0 = b
            .play(Move {
                column: 0,
                reply: 0,
            })
            .unwrap();
        let p1 = b
            .play(Move {
                column: 0,
                reply: 1,
            })
            .unwrap();
        let p2 = b
            .play(Move {
                column: 2,
                reply: 0,
            })
            .unwrap();
        assert_eq!(b.ys(), &[3, 2, 1]);
        assert_eq!(b.ids(), &[p1, p0, p2]);
        assert_eq!(b.se(p1), vec![p0, p2]);
        assert_eq!(b.ne(p2), Vec::<PointId>::new());
        assert!(b.is_up_run(&[p1]));
        assert!(!b.is_up_run(&[p0, p2]));
    }

    #[test]
    fn rotation_preserves_runs() {
        let s = rs(&[3, 1, 4, 2, 5]);
        let r = s.rotated();
        assert_eq!(r.ranks(), &[1, 4, 2, 5, 3]);
        assert_eq!(r.longest_up_run(), s.longest_up_run());
        assert_eq!(r.longest_down_run(), s.longest_down_run());
    }
}
