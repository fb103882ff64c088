//! Bound verification suites.
//!
//! Each claim is checked on a range of instances and produces one
//! [`BoundReport`] per instance (or one per claim for aggregate checks
//! such as symmetry). A failing report always carries a transcript that
//! exhibits the failure.
//!
//! Suites are tiered by cost: `fast` runs exhaustive checks for small
//! instances only, `standard` adds the remaining exhaustive ranges and the
//! seeded random adversaries, and `deep` adds the most expensive solver
//! instance and matches against solver-backed optimal opponents.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::game::{Board, Move, RankedState, Rules};
use crate::harness::adversary::{
    exhaustive_vs_a, exhaustive_vs_b, random_vs_a, random_vs_b, Line, SearchLimits,
};
use crate::harness::golden::{middling_example, wbarb_example, GoldenTrace};
use crate::harness::runner::{run_match, MatchReport};
use crate::harness::transcript::{Strategies, Transcript};
use crate::harness::HarnessError;
use crate::solver::{plain_minimax, solve_b, solve_eso, Solver};
use crate::strategy::{AStrategy, StrategyRegistry};
use crate::strategy_a::{combined_guarantee, combined_t, halving_guarantee};
use crate::strategy_b::{
    boundary_tiers_guarantee, default_width, fracturing_guarantee, tiers_guarantee,
};

/// How much work a verification run does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Standard,
    Deep,
}

impl Suite {
    /// Largest `m` of `A(m,3)` checked against an exhaustive adversary.
    pub fn exhaustive_max_m(self) -> usize {
        match self {
            Suite::Fast => 5,
            Suite::Standard | Suite::Deep => 7,
        }
    }

    /// Largest `m` of `A(m,3)` checked against random adversaries, if any.
    pub fn random_max_m(self) -> Option<usize> {
        match self {
            Suite::Fast => None,
            Suite::Standard | Suite::Deep => Some(12),
        }
    }

    /// Seeds per randomized instance.
    pub fn random_games(self) -> u64 {
        1000
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Fast => "fast",
            Suite::Standard => "standard",
            Suite::Deep => "deep",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Suite::Fast),
            "standard" => Ok(Suite::Standard),
            "deep" => Ok(Suite::Deep),
            _ => Err(format!(
                "unknown suite {s:?} (expected fast, standard or deep)"
            )),
        }
    }
}

/// How `observed` must compare to `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn holds(self, observed: f64, bound: f64) -> bool {
        match self {
            Relation::Eq => observed == bound,
            Relation::Le => observed <= bound,
            Relation::Ge => observed >= bound,
            Relation::Lt => observed < bound,
            Relation::Gt => observed > bound,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
            Relation::Gt => ">",
        })
    }
}

/// The outcome of checking one claim on one instance range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub claim: String,
    pub instances: String,
    pub relation: Relation,
    pub bound: f64,
    /// The extremum found (or a count of failures for aggregate checks).
    pub observed: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Transcript>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn new(
        claim: &str,
        instances: impl Into<String>,
        relation: Relation,
        bound: f64,
        observed: f64,
    ) -> Self {
        BoundReport {
            claim: claim.into(),
            instances: instances.into(),
            relation,
            bound,
            observed,
            pass: relation.holds(observed, bound),
            runtime_ms: None,
            counterexample: None,
            note: None,
        }
    }

    /// Attach the counterexample; it is kept only when the report fails.
    fn witness(mut self, transcript: impl FnOnce() -> Option<Transcript>) -> Self {
        if !self.pass {
            self.counterexample = transcript();
            if self.counterexample.is_none() {
                self.note
                    .get_or_insert_with(|| "no transcript could be built for this failure".into());
            }
        }
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.runtime_ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    /// One JSON line; without the runtime the line is reproducible byte for
    /// byte.
    pub fn to_json_line(&self, with_runtime: bool) -> String {
        if with_runtime || self.runtime_ms.is_none() {
            serde_json::to_string(self).expect("reports always serialize")
        } else {
            serde_json::to_string(&BoundReport {
                runtime_ms: None,
                ..self.clone()
            })
            .expect("reports always serialize")
        }
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        format!(
            "{} {} [{}]: observed {} {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.claim,
            self.instances,
            self.observed,
            self.relation,
            self.bound
        )
    }
}

/// A transcript of `line` played from the empty board.
pub fn line_transcript(
    rules: Rules,
    line: &[[usize; 2]],
    a: &str,
    b: &str,
    seed: Option<u64>,
) -> Option<Transcript> {
    let mut board = Board::new(rules);
    for &[column, reply] in line {
        board.play(Move { column, reply }).ok()?;
    }
    Some(Transcript::from_board(
        &board,
        line.to_vec(),
        Strategies {
            a: a.into(),
            b: b.into(),
        },
        seed,
    ))
}

fn optimal_transcript(rules: Rules) -> Option<Transcript> {
    run_match(
        &StrategyRegistry::standard(),
        rules,
        "a:optimal",
        "b:optimal",
        None,
        None,
    )
    .ok()
    .map(|r| r.transcript)
}

/// The values of the small-results table: `(m, k, value)`.
pub fn table_instances(suite: Suite) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<(usize, usize, usize)> = (1..=6).map(|m| (m, 1, 1)).collect();
    out.extend((1..=6).map(|m| (m, 2, m)));
    out.extend([
        (3, 3, 4),
        (4, 3, 6),
        (5, 3, 7),
        (6, 3, 9),
        (7, 3, 10),
        (4, 4, 8),
    ]);
    if suite == Suite::Deep {
        out.push((5, 4, 11));
    }
    out
}

/// Exact game values against the table.
pub fn verify_table(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let mut out = Vec::new();
    for (m, k, expected) in table_instances(suite) {
        let start = Instant::now();
        let value = solve_eso(m, k)?.turns;
        let report = BoundReport::new(
            "table",
            format!("ESO({m},{k})"),
            Relation::Eq,
            expected as f64,
            value as f64,
        )
        .witness(|| optimal_transcript(Rules::a(m, k)))
        .timed(start);
        out.push(report);
    }
    Ok(out)
}

/// Pairs whose value the symmetry and monotonicity checks use.
pub fn solved_pairs(suite: Suite) -> Vec<(usize, usize)> {
    let limit = match suite {
        Suite::Fast => 6,
        Suite::Standard => 10,
        Suite::Deep => 12,
    };
    let mut out = Vec::new();
    for m in 1..=8 {
        for k in 1..=8 {
            if (m - 1) * (k - 1) <= limit {
                out.push((m, k));
            }
        }
    }
    out
}

/// `ESO(m,k) = ESO(k,m)` and strict growth in each argument from 2 on.
pub fn verify_symmetry_and_monotonicity(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let start = Instant::now();
    let pairs = solved_pairs(suite);
    let mut values = HashMap::new();
    for &(m, k) in &pairs {
        values.insert((m, k), solve_eso(m, k)?.turns);
    }
    let range = format!(
        "{} pairs with (m-1)(k-1) <= {}",
        pairs.len(),
        pairs
            .iter()
            .map(|&(m, k)| (m - 1) * (k - 1))
            .max()
            .unwrap_or(0)
    );
    let asymmetric: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(m, k)| values.get(&(k, m)).is_some_and(|&v| v != values[&(m, k)]))
        .collect();
    let symmetry = BoundReport::new(
        "symmetry",
        range.clone(),
        Relation::Eq,
        0.0,
        asymmetric.len() as f64,
    )
    .witness(|| {
        asymmetric
            .first()
            .and_then(|&(m, k)| optimal_transcript(Rules::a(m, k)))
    })
    .timed(start);
    let mut flat = Vec::new();
    for &(m, k) in &pairs {
        if m < 2 || k < 2 {
            continue;
        }
        for next in [(m + 1, k), (m, k + 1)] {
            if let Some(&v) = values.get(&next) {
                if v <= values[&(m, k)] {
                    flat.push(next);
                }
            }
        }
    }
    let monotonicity =
        BoundReport::new("monotonicity", range, Relation::Eq, 0.0, flat.len() as f64)
            .witness(|| {
                flat.first()
                    .and_then(|&(m, k)| optimal_transcript(Rules::a(m, k)))
            })
            .timed(start);
    Ok(vec![symmetry, monotonicity])
}

/// Pairs and sample count of the endgame check.
pub const ENDGAME_PAIRS: [(usize, usize); 4] = [(3, 3), (4, 3), (3, 4), (4, 4)];
pub const ENDGAME_SAMPLES: usize = 500;

/// A random non-terminal position with `(m-1)(k-1)-1` points, and the
/// moves that reached it.
fn sample_endgame_position(rng: &mut ChaCha8Rng, m: usize, k: usize) -> (RankedState, Line) {
    let need = (m - 1) * (k - 1) - 1;
    loop {
        let mut state = RankedState::empty();
        let mut line = Vec::new();
        while state.len() < need {
            let (column, row) = (
                rng.gen_range(0..=state.len()),
                rng.gen_range(0..=state.len()),
            );
            state = state
                .insert(column, row)
                .expect("moves within range are legal");
            line.push([column, row]);
            if state.is_terminal(m, k).is_some() {
                break;
            }
        }
        if state.len() == need && state.is_terminal(m, k).is_none() {
            return (state, line);
        }
    }
}

/// In sampled positions one move short of the classical bound, the
/// endgame column ends the game whatever row B picks.
pub fn verify_endgame(seed: u64) -> Vec<BoundReport> {
    let mut out = Vec::new();
    for (m, k) in ENDGAME_PAIRS {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failure: Option<Line> = None;
        let mut failures = 0;
        for _ in 0..ENDGAME_SAMPLES {
            let (state, line) = sample_endgame_position(&mut rng, m, k);
            let escape = match state.endgame_move(m, k) {
                Ok(column) => (0..=state.len())
                    .find(|&row| {
                        state
                            .insert(column, row)
                            .map_or(true, |s| s.is_terminal(m, k).is_none())
                    })
                    .map(|row| [column, row]),
                Err(_) => Some([0, 0]),
            };
            if let Some(mv) = escape {
                failures += 1;
                failure.get_or_insert_with(|| [line, vec![mv]].concat());
            }
        }
        let report = BoundReport::new(
            "endgame",
            format!(
                "A({m},{k}), {ENDGAME_SAMPLES} positions of {} points",
                (m - 1) * (k - 1) - 1
            ),
            Relation::Eq,
            0.0,
            failures as f64,
        )
        .witness(|| {
            failure
                .and_then(|l| line_transcript(Rules::a(m, k), &l, "endgame", "escape", Some(seed)))
        })
        .timed(start);
        out.push(report);
    }
    out
}

/// Known values of the tiered game: `B(m,2) = B(m,3) = m` and two values
/// with `k = 4`.
pub fn verify_b_identities() -> Result<Vec<BoundReport>, HarnessError> {
    let mut cases: Vec<(usize, usize, usize)> = Vec::new();
    for m in 2..=7 {
        cases.push((m, 2, m));
        cases.push((m, 3, m));
    }
    cases.extend([(4, 4, 7), (5, 4, 9)]);
    let mut out = Vec::new();
    for (m, k, expected) in cases {
        let start = Instant::now();
        let value = solve_b(m, k)?.turns;
        let report = BoundReport::new(
            "b-values",
            format!("B({m},{k})"),
            Relation::Eq,
            expected as f64,
            value as f64,
        )
        .witness(|| optimal_transcript(Rules::b(m, k)))
        .timed(start);
        out.push(report);
    }
    Ok(out)
}

/// Worst game among random matches: the longest when `longest`, else the
/// shortest.
fn extreme(games: &[MatchReport], longest: bool) -> Option<&MatchReport> {
    if longest {
        games.iter().max_by_key(|g| g.turns())
    } else {
        games.iter().min_by_key(|g| g.turns())
    }
}

/// An upper bound for a fixed A against every B line.
fn exhaustive_a_report(
    claim: &str,
    rules: Rules,
    a: &dyn AStrategy,
    bound: usize,
) -> Result<BoundReport, HarnessError> {
    let start = Instant::now();
    let worst = exhaustive_vs_a(rules, a, SearchLimits::default())?;
    let mut report = BoundReport::new(
        claim,
        format!("{rules}, every B"),
        Relation::Le,
        bound as f64,
        worst.turns as f64,
    )
    .witness(|| line_transcript(rules, &worst.line, &a.id(), "exhaustive", None));
    if worst.max_fallbacks > 0 {
        report = report.note(format!(
            "strategy fell back {} times on some line",
            worst.max_fallbacks
        ));
    }
    Ok(report.timed(start))
}

/// An upper bound for a fixed A against seeded random B's.
fn random_a_report(
    claim: &str,
    rules: Rules,
    a: &dyn AStrategy,
    bound: usize,
    games: u64,
) -> BoundReport {
    let start = Instant::now();
    let played = random_vs_a(rules, a, 0..games);
    let errors = played
        .iter()
        .find(|g| g.transcript.result.diagnostic.is_some());
    let worst = extreme(&played, true).expect("at least one game");
    let mut report = BoundReport::new(
        claim,
        format!("{rules}, b:random(0..{games})"),
        Relation::Le,
        bound as f64,
        worst.turns() as f64,
    );
    if let Some(err) = errors {
        report.pass = false;
        report.note = err.transcript.result.diagnostic.clone();
        report.counterexample = Some(err.transcript.clone());
    }
    report
        .witness(|| Some(worst.transcript.clone()))
        .timed(start)
}

/// `a:combined` ends `A(m,3)` within `m + T + 1` turns.
pub fn verify_combined(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let registry = StrategyRegistry::standard();
    let mut out = Vec::new();
    for m in 3..=suite.exhaustive_max_m() {
        let rules = Rules::a(m, 3);
        let a = registry.create_a("a:combined", &rules)?;
        let report =
            exhaustive_a_report("combined-upper", rules, a.as_ref(), combined_guarantee(m))?;
        out.push(report.note(format!("T = {}", combined_t(m))));
    }
    if let Some(max) = suite.random_max_m() {
        for m in 3..=max {
            let rules = Rules::a(m, 3);
            let a = registry.create_a("a:combined", &rules)?;
            out.push(random_a_report(
                "combined-upper",
                rules,
                a.as_ref(),
                combined_guarantee(m),
                suite.random_games(),
            ));
        }
    }
    if suite == Suite::Deep {
        for m in 3..=7 {
            out.push(optimal_match_report(
                "combined-upper",
                Rules::a(m, 3),
                "a:combined",
                "b:optimal",
                combined_guarantee(m) as f64,
                Relation::Le,
            )?);
        }
    }
    Ok(out)
}

fn optimal_match_report(
    claim: &str,
    rules: Rules,
    a: &str,
    b: &str,
    bound: f64,
    relation: Relation,
) -> Result<BoundReport, HarnessError> {
    let start = Instant::now();
    let played = run_match(&StrategyRegistry::standard(), rules, a, b, None, None)?;
    let mut report = BoundReport::new(
        claim,
        format!("{rules}, {a} vs {b}"),
        relation,
        bound,
        played.turns() as f64,
    );
    if let Some(d) = &played.transcript.result.diagnostic {
        report.pass = false;
        report.note = Some(d.clone());
    }
    Ok(report
        .witness(|| Some(played.transcript.clone()))
        .timed(start))
}

/// Counters collected over every fracturing game of a run.
#[derive(Debug, Default)]
struct FracturingLog {
    games: u64,
    violation: Option<(String, Transcript)>,
    violations: u64,
    note: Option<(String, Transcript)>,
    notes: u64,
    down_run: Option<Transcript>,
}

/// `b:fracturing` keeps `A(m,3)` going for at least `m + w` turns and never
/// loses to a 3-down-run; its invariants are checked after every move.
pub fn verify_fracturing(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let registry = StrategyRegistry::standard();
    let mut out = Vec::new();
    let mut log = FracturingLog::default();
    let id = "b:fracturing";
    for m in 3..=suite.exhaustive_max_m() {
        let start = Instant::now();
        let rules = Rules::a(m, 3);
        let b = registry.create_b(id, &rules)?;
        let worst = exhaustive_vs_b(rules, b.as_ref(), SearchLimits::default())?;
        let transcript = |line: &Line| line_transcript(rules, line, "exhaustive", id, None);
        log.games += worst.nodes;
        if let Some((v, line)) = &worst.violation {
            log.violations += 1;
            if log.violation.is_none() {
                log.violation = transcript(line).map(|t| (v.clone(), t));
            }
        }
        if let Some((n, line)) = &worst.note {
            log.notes += worst.notes;
            if log.note.is_none() {
                log.note = transcript(line).map(|t| (n.clone(), t));
            }
        }
        if let Some(line) = &worst.down_run {
            log.down_run = log.down_run.take().or_else(|| transcript(line));
        }
        let report = BoundReport::new(
            "fracturing-lower",
            format!("{rules}, every A, w = {}", default_width(m)),
            Relation::Ge,
            fracturing_guarantee(m) as f64,
            worst.turns as f64,
        )
        .witness(|| transcript(&worst.line))
        .timed(start);
        out.push(report);
    }
    if let Some(max) = suite.random_max_m() {
        for m in 3..=max {
            let start = Instant::now();
            let rules = Rules::a(m, 3);
            let b = registry.create_b(id, &rules)?;
            let games = random_vs_b(rules, b.as_ref(), 0..suite.random_games());
            for g in &games {
                log.games += 1;
                if let Some(v) = g.violations.first() {
                    log.violations += 1;
                    log.violation
                        .get_or_insert_with(|| (v.clone(), g.transcript.clone()));
                }
                if let Some(n) = g.notes.first() {
                    log.notes += 1;
                    log.note
                        .get_or_insert_with(|| (n.clone(), g.transcript.clone()));
                }
                if g.cause() == crate::harness::Cause::DownRun {
                    log.down_run.get_or_insert_with(|| g.transcript.clone());
                }
            }
            let shortest = extreme(&games, false).expect("at least one game");
            let mut report = BoundReport::new(
                "fracturing-lower",
                format!(
                    "{rules}, a:random(0..{}), w = {}",
                    suite.random_games(),
                    default_width(m)
                ),
                Relation::Ge,
                fracturing_guarantee(m) as f64,
                shortest.turns() as f64,
            );
            if let Some(err) = games
                .iter()
                .find(|g| g.transcript.result.diagnostic.is_some())
            {
                report.pass = false;
                report.note = err.transcript.result.diagnostic.clone();
                report.counterexample = Some(err.transcript.clone());
            }
            out.push(
                report
                    .witness(|| Some(shortest.transcript.clone()))
                    .timed(start),
            );
        }
    }
    if suite == Suite::Deep {
        for m in 3..=7 {
            out.push(optimal_match_report(
                "fracturing-lower",
                Rules::a(m, 3),
                "a:optimal",
                id,
                fracturing_guarantee(m) as f64,
                Relation::Ge,
            )?);
        }
    }
    let range = format!(
        "all fracturing games above ({} positions and games)",
        log.games
    );
    let down = log.down_run.is_some();
    out.push(
        BoundReport::new(
            "fracturing-no-down-run",
            range.clone(),
            Relation::Eq,
            0.0,
            if down { 1.0 } else { 0.0 },
        )
        .witness(|| log.down_run.clone()),
    );
    let mut invariants = BoundReport::new(
        "fracturing-invariants",
        range.clone(),
        Relation::Eq,
        0.0,
        log.violations as f64,
    );
    if let Some((v, t)) = &log.violation {
        invariants = invariants.note(v.clone());
        invariants.counterexample = Some(t.clone());
    }
    out.push(invariants);
    let mut literal = BoundReport::new(
        "fracturing-wire-size-exact",
        range,
        Relation::Eq,
        0.0,
        log.notes as f64,
    );
    if let Some((n, t)) = &log.note {
        literal = literal.note(format!(
            "{n}; the wire can fall one short of z right after an inner fracture next to a''; \
             the weaker bound z - 1 holds and is enforced by fracturing-invariants"
        ));
        literal.counterexample = Some(t.clone());
    }
    out.push(literal);
    Ok(out)
}

/// `m + (6m)^(1/3) - 2 < ESO(m,3) < m + (6m)^(1/3) + 3` at solvable `m`.
pub fn verify_sandwich(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let max = match suite {
        Suite::Fast => 5,
        Suite::Standard | Suite::Deep => 7,
    };
    let mut out = Vec::new();
    for m in 3..=max {
        let start = Instant::now();
        let value = solve_eso(m, 3)?.turns as f64;
        let root = (6.0 * m as f64).cbrt();
        let rules = Rules::a(m, 3);
        let lower = m as f64 + root - 2.0;
        let upper = m as f64 + root + 3.0;
        out.push(
            BoundReport::new(
                "sandwich-lower",
                format!("ESO({m},3)"),
                Relation::Gt,
                lower,
                value,
            )
            .witness(|| optimal_transcript(rules))
            .timed(start),
        );
        out.push(
            BoundReport::new(
                "sandwich-upper",
                format!("ESO({m},3)"),
                Relation::Lt,
                upper,
                value,
            )
            .witness(|| optimal_transcript(rules))
            .timed(start),
        );
    }
    Ok(out)
}

/// An `(m, k)` instance.
pub type Pair = (usize, usize);

/// Instances of the tiered-game strategy checks: exhaustive ones first.
pub fn tiered_instances(suite: Suite) -> (Vec<Pair>, Vec<Pair>) {
    let exhaustive = match suite {
        Suite::Fast => vec![(4, 4), (5, 4)],
        Suite::Standard | Suite::Deep => vec![(4, 4), (5, 4), (5, 5)],
    };
    let random = match suite {
        Suite::Fast => Vec::new(),
        Suite::Standard | Suite::Deep => vec![(6, 4), (7, 4), (8, 4)],
    };
    (exhaustive, random)
}

/// The halving strategy's upper bound and the tier strategies' lower bounds
/// in the tiered game.
pub fn verify_tiered(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let registry = StrategyRegistry::standard();
    let (exhaustive, random) = tiered_instances(suite);
    let mut out = Vec::new();
    type Guarantee = fn(usize, usize) -> isize;
    let b_claims: [(&str, &str, Guarantee); 2] = [
        ("tiers-lower", "b:tiers", tiers_guarantee),
        (
            "boundary-tiers-lower",
            "b:boundary-tiers",
            boundary_tiers_guarantee,
        ),
    ];
    for &(m, k) in &exhaustive {
        let rules = Rules::b(m, k);
        let a = registry.create_a("a:halving", &rules)?;
        out.push(exhaustive_a_report(
            "halving-upper",
            rules,
            a.as_ref(),
            halving_guarantee(m, k),
        )?);
        for (claim, id, bound) in b_claims {
            let start = Instant::now();
            let b = registry.create_b(id, &rules)?;
            let worst = exhaustive_vs_b(rules, b.as_ref(), SearchLimits::default())?;
            out.push(
                BoundReport::new(
                    claim,
                    format!("{rules}, every A"),
                    Relation::Ge,
                    bound(m, k) as f64,
                    worst.turns as f64,
                )
                .witness(|| line_transcript(rules, &worst.line, "exhaustive", id, None))
                .timed(start),
            );
        }
    }
    for &(m, k) in &random {
        let rules = Rules::b(m, k);
        let a = registry.create_a("a:halving", &rules)?;
        out.push(random_a_report(
            "halving-upper",
            rules,
            a.as_ref(),
            halving_guarantee(m, k),
            suite.random_games(),
        ));
        for (claim, id, bound) in b_claims {
            let start = Instant::now();
            let b = registry.create_b(id, &rules)?;
            let games = random_vs_b(rules, b.as_ref(), 0..suite.random_games());
            let shortest = extreme(&games, false).expect("at least one game");
            let mut report = BoundReport::new(
                claim,
                format!("{rules}, a:random(0..{})", suite.random_games()),
                Relation::Ge,
                bound(m, k) as f64,
                shortest.turns() as f64,
            );
            if let Some(err) = games
                .iter()
                .find(|g| g.transcript.result.diagnostic.is_some())
            {
                report.pass = false;
                report.note = err.transcript.result.diagnostic.clone();
                report.counterexample = Some(err.transcript.clone());
            }
            out.push(
                report
                    .witness(|| Some(shortest.transcript.clone()))
                    .timed(start),
            );
        }
    }
    if suite == Suite::Deep {
        for &(m, k) in exhaustive.iter().chain(&random) {
            let rules = Rules::b(m, k);
            out.push(optimal_match_report(
                "halving-upper",
                rules,
                "a:halving",
                "b:optimal",
                halving_guarantee(m, k) as f64,
                Relation::Le,
            )?);
            for (claim, id, bound) in b_claims {
                out.push(optimal_match_report(
                    claim,
                    rules,
                    "a:optimal",
                    id,
                    bound(m, k) as f64,
                    Relation::Ge,
                )?);
            }
        }
    }
    Ok(out)
}

/// The worked examples, replayed.
pub fn verify_golden() -> Result<Vec<BoundReport>, HarnessError> {
    let mut out = Vec::new();
    for make in [
        middling_example as fn() -> Result<GoldenTrace, HarnessError>,
        wbarb_example,
    ] {
        let start = Instant::now();
        let trace = make()?;
        let failures = trace.failures();
        let mut report = BoundReport::new(
            "golden-trace",
            format!("{} ({} checks)", trace.name, trace.checks.len()),
            Relation::Eq,
            0.0,
            failures.len() as f64,
        );
        if let Some(first) = failures.first() {
            report = report.note(format!(
                "{}: expected {}, got {}",
                first.step, first.expected, first.actual
            ));
        }
        out.push(
            report
                .witness(|| Some(trace.transcript.clone()))
                .timed(start),
        );
    }
    Ok(out)
}

/// Every position with at most `max_points` points reachable from the
/// empty board, with one line reaching it.
pub fn reachable_positions(rules: Rules, max_points: usize) -> Vec<(Vec<u8>, Line)> {
    let mut out: Vec<(Vec<u8>, Line)> = vec![(Vec::new(), Vec::new())];
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    seen.insert(Vec::new(), ());
    let mut frontier = vec![(Board::new(rules), Vec::new())];
    for _ in 0..max_points {
        let mut next = Vec::new();
        for (board, line) in &frontier {
            if board.terminal().is_some() {
                continue;
            }
            for column in 0..=board.len() {
                for reply in board.replies() {
                    let mut b = board.clone();
                    b.play(Move { column, reply })
                        .expect("enumerated moves are legal");
                    if seen.insert(b.ys().to_vec(), ()).is_none() {
                        let mut l: Line = line.clone();
                        l.push([column, reply]);
                        out.push((b.ys().to_vec(), l.clone()));
                        next.push((b, l));
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// The memoized solver agrees with plain minimax on every reachable
/// position with at most six points.
pub fn verify_oracle() -> Result<Vec<BoundReport>, HarnessError> {
    let mut out = Vec::new();
    for (m, k) in [(3, 3), (4, 3)] {
        let start = Instant::now();
        let rules = Rules::a(m, k);
        let mut solver = Solver::new(rules);
        let positions = reachable_positions(rules, 6);
        let mut mismatch = None;
        let mut mismatches = 0;
        for (ys, line) in &positions {
            let fast = if rules.terminal(ys).is_some() {
                0
            } else {
                solver.value(ys)?
            };
            if fast != plain_minimax(&rules, ys) {
                mismatches += 1;
                mismatch.get_or_insert_with(|| line.clone());
            }
        }
        out.push(
            BoundReport::new(
                "solver-oracle",
                format!("{rules}, {} positions with <= 6 points", positions.len()),
                Relation::Eq,
                0.0,
                mismatches as f64,
            )
            .witness(|| mismatch.and_then(|l| line_transcript(rules, &l, "oracle", "oracle", None)))
            .timed(start),
        );
    }
    Ok(out)
}

/// Every claim of the suite, in a fixed order.
pub fn verify_all(suite: Suite) -> Result<Vec<BoundReport>, HarnessError> {
    let mut out = verify_table(suite)?;
    out.extend(verify_symmetry_and_monotonicity(suite)?);
    out.extend(verify_endgame(0));
    out.extend(verify_b_identities()?);
    out.extend(verify_combined(suite)?);
    out.extend(verify_fracturing(suite)?);
    out.extend(verify_sandwich(suite)?);
    out.extend(verify_tiered(suite)?);
    out.extend(verify_golden()?);
    out.extend(verify_oracle()?);
    Ok(out)
}

/// Whether every report passed.
pub fn all_pass(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_and_suites() {
        assert!(Relation::Le.holds(3.0, 3.0) && !Relation::Lt.holds(3.0, 3.0));
        assert!(Relation::Gt.holds(4.0, 3.6) && Relation::Eq.holds(0.0, 0.0));
        assert_eq!("deep".parse::<Suite>().unwrap(), Suite::Deep);
        assert!("slow".parse::<Suite>().is_err());
        assert_eq!(serde_json::to_string(&Relation::Ge).unwrap(), "\">=\"");
    }

    #[test]
    fn an_off_by_one_bound_fails_with_a_counterexample() {
        let rules = Rules::a(4, 3);
        let registry = StrategyRegistry::standard();
        let a = registry.create_a("a:combined", &rules).unwrap();
        let right = exhaustive_a_report("combined-upper", rules, a.as_ref(), combined_guarantee(4))
            .unwrap();
        assert!(right.pass && right.counterexample.is_none());
        let wrong = exhaustive_a_report(
            "combined-upper",
            rules,
            a.as_ref(),
            combined_guarantee(4) - 1,
        )
        .unwrap();
        assert!(!wrong.pass);
        let t = wrong
            .counterexample
            .expect("failing reports carry a transcript");
        assert_eq!(t.result.turns as f64, wrong.observed);
        t.replay().unwrap();
    }

    #[test]
    fn json_lines_are_reproducible_without_runtime() {
        let reports = verify_b_identities().unwrap();
        let again = verify_b_identities().unwrap();
        let lines: Vec<String> = reports.iter().map(|r| r.to_json_line(false)).collect();
        let lines_again: Vec<String> = again.iter().map(|r| r.to_json_line(false)).collect();
        assert_eq!(lines, lines_again);
        assert!(!lines[0].contains("runtime_ms"));
        assert!(reports[0].to_json_line(true).contains("runtime_ms"));
        let back: BoundReport = serde_json::from_str(&lines[0]).unwrap();
        assert_eq!(back.claim, "b-values");
    }

    #[test]
    fn reachable_positions_are_distinct() {
        let positions = reachable_positions(Rules::a(3, 3), 3);
        // 1 empty, 1 with one point, 2 with two, and the 6 orders of three
        assert_eq!(positions.len(), 10);
        for (ys, line) in positions {
            assert_eq!(
                line_transcript(Rules::a(3, 3), &line, "x", "y", None)
                    .unwrap()
                    .result
                    .state,
                ys
            );
        }
    }

    #[test]
    fn endgame_samples_are_full_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (state, line) = sample_endgame_position(&mut rng, 4, 4);
        assert_eq!((state.len(), line.len()), (8, 8));
        assert!(state.is_terminal(4, 4).is_none());
    }
}
