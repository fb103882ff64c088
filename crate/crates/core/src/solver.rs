//! Exact minimax solver for both games.
//!
//! The solver answers the decision question "can A end the game within `d`
//! more turns?" by depth-first search and deepens `d` from the static lower
//! bound, so every answer it stores is a proven bound on the value of a
//! position. The memo table maps a canonical key to the interval
//! `[lo, hi]` known to contain that value; entries are only ever narrowed,
//! which makes concurrent or repeated writes of the same fact harmless.
//!
//! Keys pack the y-values (ranks or tiers, all `>= 1`) into 5-bit fields of
//! a `u128` and take the smaller of the position and its half-turn image
//! (x-order reversed, values complemented). The half-turn preserves up-runs,
//! down-runs and the move structure, so both images share a value.
//!
//! # Cache file format
//!
//! `save_cache` writes, all integers little-endian:
//!
//! ```text
//! magic   4 bytes  "ESO1"
//! version u8       1
//! kind    u8       0 = A-game, 1 = B-game
//! m       u8
//! k       u8
//! count   u64
//! count x { key u128, lo u8, hi u8 }
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{insert_rank, longest_down_run, longest_up_run, GameKind, Rules};

pub const MAX_SOLVER_POINTS: usize = 25;
const CACHE_MAGIC: &[u8; 4] = b"ESO1";
const CACHE_VERSION: u8 = 1;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("position too large for the solver ({0} points)")]
    TooLarge(usize),
    #[error("invalid position: {0}")]
    InvalidPosition(String),
    #[error("cache file: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Number of turns to the end of the game under optimal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameValue {
    pub turns: usize,
}

/// Result of a budgeted solve: exact, or a certified interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Exact { value: usize },
    Bounds { lo: usize, hi: usize },
}

impl Outcome {
    pub fn exact(self) -> Option<usize> {
        match self {
            Outcome::Exact { value } => Some(value),
            Outcome::Bounds { .. } => None,
        }
    }
}

/// Limits on a single search.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            time: Some(Duration::from_secs_f64(secs)),
            nodes: None,
        }
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            time: None,
            nodes: Some(n),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    lo: u8,
    hi: u8,
}

/// Canonical memo key of a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoKey(pub u128);

fn pack<I: Iterator<Item = u8>>(values: I) -> u128 {
    values.fold(0u128, |acc, v| (acc << 5) | v as u128)
}

/// Key shared by a position and its half-turn image. `top` is the value
/// that complements to 1: `t+1` for ranks, `k` for tiers.
fn canonical_key(ys: &[u8], top: u8) -> MemoKey {
    let direct = pack(ys.iter().copied());
    let rotated = pack(ys.iter().rev().map(|&v| top - v));
    MemoKey(direct.min(rotated))
}

pub fn memo_key(rules: &Rules, ys: &[u8]) -> MemoKey {
    canonical_key(ys, complement_top(rules, ys.len()))
}

fn complement_top(rules: &Rules, t: usize) -> u8 {
    match rules.kind {
        GameKind::A => t as u8 + 1,
        GameKind::B => rules.k as u8,
    }
}

/// Memoized minimax solver for one `(kind, m, k)`.
pub struct Solver {
    rules: Rules,
    memo: FxHashMap<MemoKey, Bounds>,
    nodes: u64,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
}

impl Solver {
    pub fn new(rules: Rules) -> Self {
        Solver {
            rules,
            memo: FxHashMap::default(),
            nodes: 0,
            deadline: None,
            node_limit: None,
        }
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn nodes_searched(&self) -> u64 {
        self.nodes
    }

    fn check_position(&self, ys: &[u8]) -> Result<(), SolveError> {
        if ys.len() > MAX_SOLVER_POINTS.min(self.rules.max_points()) {
            return Err(SolveError::TooLarge(ys.len()));
        }
        match self.rules.kind {
            GameKind::A => {
                let mut seen = vec![false; ys.len() + 1];
                for &r in ys {
                    let r = r as usize;
                    if r == 0 || r > ys.len() || std::mem::replace(&mut seen[r], true) {
                        return Err(SolveError::InvalidPosition(format!(
                            "{ys:?} is not a permutation"
                        )));
                    }
                }
            }
            GameKind::B => {
                if ys.iter().any(|&t| t == 0 || t as usize >= self.rules.k) {
                    return Err(SolveError::InvalidPosition(format!(
                        "{ys:?} has tiers outside 1..k"
                    )));
                }
            }
        }
        Ok(())
    }

    fn is_terminal(&self, ys: &[u8]) -> bool {
        self.rules.terminal(ys).is_some()
    }

    /// Turns needed at least: each turn lengthens a longest run by at most one.
    fn static_lower(&self, ys: &[u8]) -> usize {
        match self.rules.kind {
            GameKind::A => {
                let up = self.rules.m.saturating_sub(longest_up_run(ys, false));
                let down = self.rules.k.saturating_sub(longest_down_run(ys));
                up.min(down)
            }
            GameKind::B => self.rules.m.saturating_sub(longest_up_run(ys, true)),
        }
    }

    /// Turns needed at most: the position is terminal once it holds
    /// `max_points` points.
    fn static_upper(&self, ys: &[u8]) -> usize {
        self.rules.max_points().saturating_sub(ys.len())
    }

    fn child(&self, ys: &[u8], column: usize, reply: usize) -> Vec<u8> {
        let mut next = ys.to_vec();
        match self.rules.kind {
            GameKind::A => insert_rank(&mut next, column, reply),
            GameKind::B => next.insert(column, reply as u8),
        }
        next
    }

    fn replies(&self, ys: &[u8], column: usize) -> Vec<usize> {
        match self.rules.kind {
            GameKind::A => {
                // rows next to the neighbours first: those never lengthen a
                // run and are the likeliest refutations
                let t = ys.len();
                let mut order = Vec::with_capacity(t + 1);
                if column < t {
                    order.push(ys[column] as usize);
                    order.push(ys[column] as usize - 1);
                }
                if column > 0 {
                    order.push(ys[column - 1] as usize);
                    order.push(ys[column - 1] as usize - 1);
                }
                let mut seen = vec![false; t + 1];
                let mut out = Vec::with_capacity(t + 1);
                for r in order.into_iter().chain(0..=t) {
                    if !std::mem::replace(&mut seen[r], true) {
                        out.push(r);
                    }
                }
                out
            }
            GameKind::B => (1..self.rules.k).collect(),
        }
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(SolveError::BudgetExceeded);
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(SolveError::BudgetExceeded);
                }
            }
        }
        Ok(())
    }

    fn known(&self, ys: &[u8]) -> (usize, usize, MemoKey) {
        let key = memo_key(&self.rules, ys);
        let mut lo = self.static_lower(ys);
        let mut hi = self.static_upper(ys);
        if let Some(b) = self.memo.get(&key) {
            lo = lo.max(b.lo as usize);
            hi = hi.min(b.hi as usize);
        }
        (lo, hi, key)
    }

    fn record(&mut self, key: MemoKey, lo: usize, hi: usize) {
        let e = self
            .memo
            .entry(key)
            .or_insert(Bounds { lo: 0, hi: u8::MAX });
        e.lo = e.lo.max(lo as u8);
        e.hi = e.hi.min(hi as u8);
    }

    /// Whether A can force the end of the game within `depth` more turns.
    fn wins_within(&mut self, ys: &[u8], depth: usize) -> Result<bool, SolveError> {
        if self.is_terminal(ys) {
            return Ok(true);
        }
        let (lo, hi, key) = self.known(ys);
        if hi <= depth {
            return Ok(true);
        }
        if lo > depth {
            return Ok(false);
        }
        self.tick()?;
        let t = ys.len();
        for column in 0..=t {
            if self.column_wins(ys, column, depth)? {
                self.record(key, 0, depth);
                return Ok(true);
            }
        }
        self.record(key, depth + 1, usize::from(u8::MAX));
        Ok(false)
    }

    /// Whether every reply to `column` leaves a position A wins within
    /// `depth - 1` turns.
    fn column_wins(&mut self, ys: &[u8], column: usize, depth: usize) -> Result<bool, SolveError> {
        let replies = self.replies(ys, column);
        let mut open = Vec::with_capacity(replies.len());
        for reply in replies {
            let next = self.child(ys, column, reply);
            if self.is_terminal(&next) {
                continue;
            }
            let (lo, hi, _) = self.known(&next);
            if lo > depth - 1 {
                return Ok(false);
            }
            if hi > depth - 1 {
                open.push(next);
            }
        }
        for next in open {
            if !self.wins_within(&next, depth - 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn deepen(&mut self, ys: &[u8]) -> Result<usize, SolveError> {
        if self.is_terminal(ys) {
            return Ok(0);
        }
        loop {
            let (lo, hi, _) = self.known(ys);
            if lo >= hi {
                return Ok(hi);
            }
            self.wins_within(ys, lo)?;
        }
    }

    fn arm(&mut self, budget: Budget) {
        self.deadline = budget.time.map(|d| Instant::now() + d);
        self.node_limit = budget.nodes.map(|n| self.nodes + n);
    }

    fn disarm(&mut self) {
        self.deadline = None;
        self.node_limit = None;
    }

    /// Exact number of remaining turns under optimal play.
    pub fn value(&mut self, ys: &[u8]) -> Result<usize, SolveError> {
        self.value_within(ys, Budget::unlimited())
    }

    pub fn value_within(&mut self, ys: &[u8], budget: Budget) -> Result<usize, SolveError> {
        self.check_position(ys)?;
        self.arm(budget);
        let out = self.deepen(ys);
        self.disarm();
        out
    }

    /// Like [`Solver::value_within`], but reports the best certified
    /// interval instead of failing when the budget runs out.
    pub fn solve(&mut self, ys: &[u8], budget: Budget) -> Result<Outcome, SolveError> {
        match self.value_within(ys, budget) {
            Ok(value) => Ok(Outcome::Exact { value }),
            Err(SolveError::BudgetExceeded) => {
                let (lo, hi, _) = self.known(ys);
                Ok(Outcome::Bounds { lo, hi })
            }
            Err(e) => Err(e),
        }
    }

    /// Proven interval for a position without searching.
    pub fn bounds(&self, ys: &[u8]) -> (usize, usize) {
        if self.is_terminal(ys) {
            return (0, 0);
        }
        let (lo, hi, _) = self.known(ys);
        (lo, hi)
    }

    /// Smallest column achieving the minimax value.
    pub fn best_a_move(&mut self, ys: &[u8]) -> Result<usize, SolveError> {
        self.best_a_move_within(ys, Budget::unlimited())
    }

    pub fn best_a_move_within(&mut self, ys: &[u8], budget: Budget) -> Result<usize, SolveError> {
        self.check_position(ys)?;
        if self.is_terminal(ys) {
            return Err(SolveError::InvalidPosition("game is over".into()));
        }
        self.arm(budget);
        let out = (|| {
            let v = self.deepen(ys)?;
            for column in 0..=ys.len() {
                if self.column_wins(ys, column, v)? {
                    return Ok(column);
                }
            }
            Err(SolveError::InvalidPosition(
                "no column achieves the value".into(),
            ))
        })();
        self.disarm();
        out
    }

    /// Smallest reply maximizing the remaining game length.
    pub fn best_b_reply(&mut self, ys: &[u8], column: usize) -> Result<usize, SolveError> {
        self.best_b_reply_within(ys, column, Budget::unlimited())
    }

    pub fn best_b_reply_within(
        &mut self,
        ys: &[u8],
        column: usize,
        budget: Budget,
    ) -> Result<usize, SolveError> {
        self.check_position(ys)?;
        if column > ys.len() {
            return Err(SolveError::InvalidPosition(format!(
                "column {column} out of range"
            )));
        }
        self.arm(budget);
        let out = (|| {
            let mut best: Option<(usize, usize)> = None;
            let candidates: Vec<usize> = match self.rules.kind {
                GameKind::A => (0..=ys.len()).collect(),
                GameKind::B => (1..self.rules.k).collect(),
            };
            for reply in candidates {
                let next = self.child(ys, column, reply);
                let v = self.deepen(&next)?;
                if best.is_none_or(|(bv, _)| v > bv) {
                    best = Some((v, reply));
                }
            }
            Ok(best.expect("at least one reply").1)
        })();
        self.disarm();
        out
    }

    pub fn save_cache(&self, path: &Path) -> Result<(), SolveError> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        let kind = match self.rules.kind {
            GameKind::A => 0u8,
            GameKind::B => 1u8,
        };
        w.write_all(&[CACHE_VERSION, kind, self.rules.m as u8, self.rules.k as u8])?;
        let mut entries: Vec<_> = self.memo.iter().collect();
        entries.sort_unstable_by_key(|(k, _)| **k);
        w.write_all(&(entries.len() as u64).to_le_bytes())?;
        for (key, b) in entries {
            w.write_all(&key.0.to_le_bytes())?;
            w.write_all(&[b.lo, b.hi])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Merge a cache file written for the same rules. Returns the number of
    /// entries read.
    pub fn load_cache(&mut self, path: &Path) -> Result<usize, SolveError> {
        let mut r = BufReader::new(File::open(path)?);
        let mut header = [0u8; 8];
        r.read_exact(&mut header)?;
        if &header[..4] != CACHE_MAGIC {
            return Err(SolveError::Cache("bad magic".into()));
        }
        if header[4] != CACHE_VERSION {
            return Err(SolveError::Cache(format!(
                "unsupported version {}",
                header[4]
            )));
        }
        let kind = if header[5] == 0 {
            GameKind::A
        } else {
            GameKind::B
        };
        if kind != self.rules.kind
            || header[6] as usize != self.rules.m
            || header[7] as usize != self.rules.k
        {
            return Err(SolveError::Cache(
                "cache written for different rules".into(),
            ));
        }
        let mut count = [0u8; 8];
        r.read_exact(&mut count)?;
        let count = u64::from_le_bytes(count);
        let mut entry = [0u8; 18];
        for _ in 0..count {
            r.read_exact(&mut entry)?;
            let key = MemoKey(u128::from_le_bytes(
                entry[..16].try_into().expect("16 bytes"),
            ));
            self.record(key, entry[16] as usize, entry[17] as usize);
        }
        Ok(count as usize)
    }
}

/// Cache file name for a rule set inside a cache directory.
pub fn cache_file_name(rules: &Rules) -> String {
    format!("eso-{}-{}-{}.bin", rules.kind, rules.m, rules.k).to_lowercase()
}

/// `ESO(m,k)`: length of the A-game from the empty board.
pub fn solve_eso(m: usize, k: usize) -> Result<GameValue, SolveError> {
    let mut s = Solver::new(
        Rules::new(GameKind::A, m, k).map_err(|e| SolveError::InvalidPosition(e.to_string()))?,
    );
    Ok(GameValue {
        turns: s.value(&[])?,
    })
}

/// `B(m,k)`: length of the B-game from the empty board.
pub fn solve_b(m: usize, k: usize) -> Result<GameValue, SolveError> {
    let mut s = Solver::new(
        Rules::new(GameKind::B, m, k).map_err(|e| SolveError::InvalidPosition(e.to_string()))?,
    );
    Ok(GameValue {
        turns: s.value(&[])?,
    })
}

/// Plain minimax without memo, bounds or symmetry. Exponential; test oracle
/// for small positions only.
pub fn plain_minimax(rules: &Rules, ys: &[u8]) -> usize {
    if rules.terminal(ys).is_some() {
        return 0;
    }
    let mut best = usize::MAX;
    for column in 0..=ys.len() {
        let mut worst = 0;
        let replies: Vec<usize> = match rules.kind {
            GameKind::A => (0..=ys.len()).collect(),
            GameKind::B => (1..rules.k).collect(),
        };
        for reply in replies {
            let mut next = ys.to_vec();
            match rules.kind {
                GameKind::A => insert_rank(&mut next, column, reply),
                GameKind::B => next.insert(column, reply as u8),
            }
            worst = worst.max(plain_minimax(rules, &next));
        }
        best = best.min(worst);
    }
    1 + best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(solve_eso(3, 3).unwrap().turns, 4);
        assert_eq!(solve_eso(4, 1).unwrap().turns, 1);
        assert_eq!(solve_eso(1, 4).unwrap().turns, 1);
        for m in 1..=6 {
            assert_eq!(solve_eso(m, 2).unwrap().turns, m);
        }
        let mut s = Solver::new(Rules::a(3, 3));
        assert_eq!(s.value(&[1, 2]).unwrap(), 2);
    }

    #[test]
    fn b_game_small_values() {
        for m in 2..=6 {
            assert_eq!(solve_b(m, 2).unwrap().turns, m);
            assert_eq!(solve_b(m, 3).unwrap().turns, m);
        }
        assert_eq!(solve_b(4, 4).unwrap().turns, 7);
    }

    #[test]
    fn key_is_rotation_invariant() {
        let r = Rules::a(5, 5);
        assert_eq!(
            memo_key(&r, &[3, 1, 4, 2, 5]),
            memo_key(&r, &[1, 4, 2, 5, 3])
        );
        assert_ne!(memo_key(&r, &[1, 2]), memo_key(&r, &[2, 1]));
        let b = Rules::b(5, 4);
        assert_eq!(memo_key(&b, &[1, 1, 3]), memo_key(&b, &[1, 3, 3]));
    }

    #[test]
    fn budget_gives_certified_interval() {
        let mut s = Solver::new(Rules::a(5, 4));
        let out = s.solve(&[], Budget::nodes(50)).unwrap();
        match out {
            Outcome::Bounds { lo, hi } => {
                assert!(lo <= 11 && 11 <= hi, "[{lo},{hi}]");
            }
            Outcome::Exact { value } => assert_eq!(value, 11),
        }
    }

    #[test]
    fn best_moves() {
        let mut s = Solver::new(Rules::a(3, 3));
        let c = s.best_a_move(&[]).unwrap();
        assert_eq!(c, 0);
        // a column from which every reply terminates, like the endgame move
        let c = s.best_a_move(&[2, 1, 3]).unwrap();
        for row in 0..=3 {
            let mut next = vec![2, 1, 3];
            insert_rank(&mut next, c, row);
            assert!(Rules::a(3, 3).terminal(&next).is_some());
        }
        // B keeps the game alive whenever it can
        let r = s.best_b_reply(&[1, 2], 1).unwrap();
        let mut next = vec![1, 2];
        insert_rank(&mut next, 1, r);
        assert!(Rules::a(3, 3).terminal(&next).is_none());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(cache_file_name(&Rules::a(4, 3)));
        let mut s = Solver::new(Rules::a(4, 3));
        assert_eq!(s.value(&[]).unwrap(), 6);
        s.save_cache(&path).unwrap();
        let mut fresh = Solver::new(Rules::a(4, 3));
        assert_eq!(fresh.load_cache(&path).unwrap(), s.memo_len());
        assert_eq!(fresh.value(&[]).unwrap(), 6);
        let mut other = Solver::new(Rules::a(5, 3));
        assert!(other.load_cache(&path).is_err());
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..4], b"ESO1");
    }
}
