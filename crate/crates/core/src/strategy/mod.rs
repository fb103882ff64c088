//! Strategy traits and the id-based registry.
//!
//! Strategies are state machines driven by the match loop: A proposes a
//! column with [`AStrategy::next_column`], B answers with
//! [`BStrategy::reply`], and after every turn both sides see the new point
//! through `observe`. Nothing is hidden outside the strategy value, so a
//! strategy can be cloned mid-game (the exhaustive adversaries branch this
//! way) and a game replays identically from its transcript.

mod geom;
pub mod optimal;
pub mod random;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::game::{Board, GameKind, PointId, Rules};
use crate::solver::SolveError;
use crate::strategy_a::{CombinedA, HalvingA, MiddlingA};
use crate::strategy_b::{BoundaryTiersB, FracturingB, NonExtenderB, TiersB};

pub(crate) use geom::Frame;
pub use optimal::{OptimalA, OptimalB};
pub use random::{RandomA, RandomB};

#[derive(Debug, Error)]
pub enum StrategyError {
    /// The strategy does not apply to these rules (wrong game or `k`).
    #[error("{id} does not support {rules}")]
    Unsupported { id: String, rules: String },
    /// A situation the strategy's analysis says cannot happen did happen.
    #[error("{0}")]
    Contract(String),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

/// Counters a strategy keeps about its own execution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct StrategyStats {
    /// Replies outside the cases the strategy's analysis names explicitly,
    /// handled by a documented fallback rule.
    pub fallbacks: u32,
}

/// Player A: chooses columns.
pub trait AStrategy: Send {
    /// Registry id, including parameters, e.g. `a:random(7)`.
    fn id(&self) -> String;

    fn next_column(&mut self, board: &Board) -> Result<usize, StrategyError>;

    /// Called after every turn that leaves the game running, with the point
    /// just created.
    fn observe(&mut self, board: &Board, point: PointId) -> Result<(), StrategyError>;

    fn clone_box(&self) -> Box<dyn AStrategy>;

    fn stats(&self) -> StrategyStats {
        StrategyStats::default()
    }
}

/// Player B: chooses rows (A-game) or tiers (B-game).
pub trait BStrategy: Send {
    fn id(&self) -> String;

    fn reply(&mut self, board: &Board, column: usize) -> Result<usize, StrategyError>;

    /// Called after every turn that leaves the game running, with the point
    /// just created.
    fn observe(&mut self, board: &Board, point: PointId) -> Result<(), StrategyError>;

    fn clone_box(&self) -> Box<dyn BStrategy>;

    fn stats(&self) -> StrategyStats {
        StrategyStats::default()
    }

    /// Invariant violations detected so far (empty for strategies without
    /// checkable invariants).
    fn violations(&self) -> Vec<String> {
        Vec::new()
    }

    /// Non-fatal observations worth reporting, such as a documented bound
    /// missed by one in a way that does not affect the strategy.
    fn notes(&self) -> Vec<String> {
        Vec::new()
    }
}

impl Clone for Box<dyn AStrategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

impl Clone for Box<dyn BStrategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

impl fmt::Debug for dyn AStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AStrategy({})", self.id())
    }
}

impl fmt::Debug for dyn BStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BStrategy({})", self.id())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown strategy id {0:?}")]
    Unknown(String),
    #[error("malformed strategy id {0:?}")]
    Malformed(String),
    #[error("{id}: {reason}")]
    Rejected { id: String, reason: String },
}

/// A parsed strategy id: `side:name` or `side:name(arg)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyId {
    pub side: char,
    pub name: String,
    pub arg: Option<String>,
}

impl std::str::FromStr for StrategyId {
    type Err = RegistryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RegistryError::Malformed(s.to_string());
        let (side, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let side = match side {
            "a" | "A" => 'a',
            "b" | "B" => 'b',
            _ => return Err(bad()),
        };
        let (name, arg) = match rest.split_once('(') {
            Some((name, tail)) => {
                let arg = tail.strip_suffix(')').ok_or_else(bad)?;
                let arg = arg.trim();
                (name, (!arg.is_empty()).then(|| arg.to_string()))
            }
            None => (rest, None),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(bad());
        }
        Ok(StrategyId {
            side,
            name: name.to_string(),
            arg,
        })
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.arg {
            Some(arg) => write!(f, "{}:{}({arg})", self.side, self.name),
            None => write!(f, "{}:{}", self.side, self.name),
        }
    }
}

pub type AFactory = fn(&Rules, Option<&str>) -> Result<Box<dyn AStrategy>, String>;
pub type BFactory = fn(&Rules, Option<&str>) -> Result<Box<dyn BStrategy>, String>;

/// Maps strategy names to constructors.
pub struct StrategyRegistry {
    a: BTreeMap<&'static str, AFactory>,
    b: BTreeMap<&'static str, BFactory>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            a: BTreeMap::new(),
            b: BTreeMap::new(),
        }
    }

    /// Registry with every built-in strategy.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register_a("combined", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(CombinedA::new(rules)?))
        });
        r.register_a("middling", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(MiddlingA::new(rules)?))
        });
        r.register_a("wbarb", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(CombinedA::immediate_barb(rules)?))
        });
        r.register_a("halving", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(HalvingA::new(rules)?))
        });
        r.register_a("optimal", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(OptimalA::new(*rules)))
        });
        r.register_a("random", |rules, arg| {
            Ok(Box::new(RandomA::new(*rules, seed_arg(arg)?)))
        });
        r.register_b("fracturing", |rules, arg| {
            let w = arg
                .map(|a| a.parse::<usize>().map_err(|_| format!("bad w {a:?}")))
                .transpose()?;
            Ok(Box::new(FracturingB::new(rules, w)?))
        });
        r.register_b("tiers", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(TiersB::new(rules)?))
        });
        r.register_b("boundary-tiers", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(BoundaryTiersB::new(rules)?))
        });
        r.register_b("nonextend", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(NonExtenderB::new(rules)?))
        });
        r.register_b("optimal", |rules, arg| {
            no_arg(arg)?;
            Ok(Box::new(OptimalB::new(*rules)))
        });
        r.register_b("random", |rules, arg| {
            Ok(Box::new(RandomB::new(*rules, seed_arg(arg)?)))
        });
        r
    }

    pub fn register_a(&mut self, name: &'static str, factory: AFactory) {
        self.a.insert(name, factory);
    }

    pub fn register_b(&mut self, name: &'static str, factory: BFactory) {
        self.b.insert(name, factory);
    }

    /// Registered ids, `a:` names first.
    pub fn names(&self) -> Vec<String> {
        self.a
            .keys()
            .map(|n| format!("a:{n}"))
            .chain(self.b.keys().map(|n| format!("b:{n}")))
            .collect()
    }

    pub fn create_a(&self, id: &str, rules: &Rules) -> Result<Box<dyn AStrategy>, RegistryError> {
        let parsed: StrategyId = id.parse()?;
        if parsed.side != 'a' {
            return Err(RegistryError::Unknown(id.to_string()));
        }
        let factory = self
            .a
            .get(parsed.name.as_str())
            .ok_or_else(|| RegistryError::Unknown(id.to_string()))?;
        factory(rules, parsed.arg.as_deref()).map_err(|reason| RegistryError::Rejected {
            id: id.to_string(),
            reason,
        })
    }

    pub fn create_b(&self, id: &str, rules: &Rules) -> Result<Box<dyn BStrategy>, RegistryError> {
        let parsed: StrategyId = id.parse()?;
        if parsed.side != 'b' {
            return Err(RegistryError::Unknown(id.to_string()));
        }
        let factory = self
            .b
            .get(parsed.name.as_str())
            .ok_or_else(|| RegistryError::Unknown(id.to_string()))?;
        factory(rules, parsed.arg.as_deref()).map_err(|reason| RegistryError::Rejected {
            id: id.to_string(),
            reason,
        })
    }
}

fn no_arg(arg: Option<&str>) -> Result<(), String> {
    match arg {
        None => Ok(()),
        Some(a) => Err(format!("takes no parameter, got {a:?}")),
    }
}

fn seed_arg(arg: Option<&str>) -> Result<u64, String> {
    match arg {
        None => Ok(0),
        Some(a) => a.parse().map_err(|_| format!("bad seed {a:?}")),
    }
}

impl From<StrategyError> for String {
    fn from(e: StrategyError) -> Self {
        e.to_string()
    }
}

/// Error for a strategy built for rules it does not handle.
pub(crate) fn unsupported(id: &str, rules: &Rules) -> StrategyError {
    StrategyError::Unsupported {
        id: id.to_string(),
        rules: rules.to_string(),
    }
}

/// Require a game of `kind` with the given `k` (or any `k` when `None`).
pub(crate) fn require(
    id: &str,
    rules: &Rules,
    kind: GameKind,
    k: Option<usize>,
) -> Result<(), StrategyError> {
    if rules.kind != kind || k.is_some_and(|k| rules.k != k) {
        return Err(unsupported(id, rules));
    }
    Ok(())
}
