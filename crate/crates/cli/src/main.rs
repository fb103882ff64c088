//! `eso`: solve, tabulate, play, verify and replay games of the
//! Erdős–Szekeres on-line game, or serve them over HTTP.
//!
//! Exit codes: 0 success, 1 runtime error, 2 bad flags, 3 a verification
//! or replay check failed, 4 a solver budget ran out. Primary output goes to
//! stdout and is byte-identical across identical invocations; timings and
//! progress go to stderr.

use std::fs;
use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eso_core::game::{GameKind, Rules};
use eso_core::harness::{default_max_turns, run_match, verify_all, BoundReport, Suite, Transcript};
use eso_core::solver::{cache_file_name, Budget, Outcome, Solver};
use eso_core::strategy::StrategyRegistry;
use serde_json::json;

const CACHE_DIR_VAR: &str = "ESO_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "eso", version, about = "The Erdős–Szekeres on-line game")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact game value, or a certified interval when the budget runs out.
    Solve(SolveArgs),
    /// Values for a range of m at fixed k, next to (m-1)(k-1)+1.
    Table(TableArgs),
    /// Play two strategies against each other and emit the transcript.
    Match(MatchArgs),
    /// Check the known values and the strategy bounds.
    Verify(VerifyArgs),
    /// Check that transcripts replay to their recorded result.
    Replay(ReplayArgs),
    /// Run the JSON HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Game {
    A,
    B,
}

impl From<Game> for GameKind {
    fn from(g: Game) -> Self {
        match g {
            Game::A => GameKind::A,
            Game::B => GameKind::B,
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "a")]
    game: Game,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    /// Seconds of search before reporting an interval.
    #[arg(long, value_parser = parse_seconds)]
    budget: Option<f64>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "a")]
    game: Game,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    min_m: usize,
    #[arg(long, default_value_t = 7)]
    max_m: usize,
    /// Seconds of search per entry.
    #[arg(long, value_parser = parse_seconds)]
    budget: Option<f64>,
    /// Comma-separated output.
    #[arg(long, conflicts_with = "json")]
    csv: bool,
}

#[derive(Debug, Args)]
struct MatchArgs {
    #[arg(long, value_enum, default_value = "a")]
    game: Game,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    /// Strategy id for player A, e.g. `a:combined`.
    #[arg(long)]
    a: String,
    /// Strategy id for player B, e.g. `b:fracturing`.
    #[arg(long)]
    b: String,
    /// Seed for random strategies given without one.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_turns: Option<usize>,
    /// Write the transcript here and print a summary instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "standard")]
    suite: Suite,
    /// Also write every report, with runtimes, as JSON lines.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write each failing check's counterexample transcript into this
    /// directory.
    #[arg(long)]
    counterexamples: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReplayArgs {
    /// Transcripts, JSON lines of transcripts, or verify reports; `-`
    /// reads stdin.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Print the position after every turn.
    #[arg(long)]
    steps: bool,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[arg(long, env = "ESO_ADDR", default_value = eso_service::DEFAULT_ADDR)]
    addr: SocketAddr,
    /// Solver seconds per hint before falling back to a strategy.
    #[arg(long, value_parser = parse_seconds, default_value_t = 0.5)]
    hint_budget: f64,
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("{s:?} is not a positive number of seconds")),
    }
}

#[derive(Debug)]
enum Failure {
    Flags(String),
    Runtime(String),
    Check(String),
    Budget,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Flags(_) => 2,
            Failure::Check(_) => 3,
            Failure::Budget => 4,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Solve(args) => solve(args, json),
        Command::Table(args) => table(args, json),
        Command::Match(args) => play(args, json),
        Command::Verify(args) => verify(args, json),
        Command::Replay(args) => replay(args, json),
        Command::Serve(args) => serve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Flags(m) | Failure::Runtime(m) | Failure::Check(m) => {
                    eprintln!("eso: {m}")
                }
                Failure::Budget => eprintln!("eso: budget exhausted"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn rules(game: Game, m: usize, k: usize) -> Result<Rules, Failure> {
    Rules::new(game.into(), m, k).map_err(|e| Failure::Flags(e.to_string()))
}

fn budget(seconds: Option<f64>) -> Budget {
    Budget {
        time: seconds.map(Duration::from_secs_f64),
        nodes: None,
    }
}

fn value_name(rules: &Rules) -> String {
    match rules.kind {
        GameKind::A => format!("ESO({},{})", rules.m, rules.k),
        GameKind::B => format!("B({},{})", rules.m, rules.k),
    }
}

/// A solver primed from `$ESO_CACHE_DIR` when set.
fn cached_solver(rules: Rules) -> Solver {
    let mut solver = Solver::new(rules);
    if let Some(path) = cache_path(&rules) {
        if path.exists() {
            match solver.load_cache(&path) {
                Ok(n) => eprintln!("loaded {n} cached bounds from {}", path.display()),
                Err(e) => eprintln!("ignoring cache {}: {e}", path.display()),
            }
        }
    }
    solver
}

fn cache_path(rules: &Rules) -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_VAR).map(|dir| Path::new(&dir).join(cache_file_name(rules)))
}

fn save_cache(solver: &Solver) {
    if let Some(path) = cache_path(&solver.rules()) {
        let saved = path
            .parent()
            .map_or(Ok(()), fs::create_dir_all)
            .map_err(Into::into)
            .and_then(|_| solver.save_cache(&path));
        if let Err(e) = saved {
            eprintln!("could not write cache {}: {e}", path.display());
        }
    }
}

fn solve_one(rules: Rules, seconds: Option<f64>) -> Result<Outcome, Failure> {
    let mut solver = cached_solver(rules);
    let start = Instant::now();
    let outcome = solver
        .solve(&[], budget(seconds))
        .map_err(|e| Failure::Flags(e.to_string()))?;
    eprintln!(
        "{}: {} nodes in {:.2?}",
        value_name(&rules),
        solver.nodes_searched(),
        start.elapsed()
    );
    save_cache(&solver);
    Ok(outcome)
}

fn outcome_json(rules: &Rules, outcome: Outcome) -> serde_json::Value {
    let mut v = json!({ "game": rules.kind, "m": rules.m, "k": rules.k });
    let extra = serde_json::to_value(outcome).expect("outcomes serialize");
    v.as_object_mut()
        .expect("object")
        .extend(extra.as_object().expect("object").clone());
    v
}

fn solve(args: SolveArgs, json: bool) -> CmdResult {
    let rules = rules(args.game, args.m, args.k)?;
    let outcome = solve_one(rules, args.budget)?;
    if json {
        println!("{}", outcome_json(&rules, outcome));
    } else {
        match outcome {
            Outcome::Exact { value } => println!("{} = {value}", value_name(&rules)),
            Outcome::Bounds { lo, hi } => println!("{} ∈ [{lo},{hi}]", value_name(&rules)),
        }
    }
    match outcome {
        Outcome::Exact { .. } => Ok(()),
        Outcome::Bounds { .. } => Err(Failure::Budget),
    }
}

fn table(args: TableArgs, json: bool) -> CmdResult {
    if args.min_m == 0 || args.min_m > args.max_m {
        return Err(Failure::Flags(format!(
            "empty range of m: {}..={}",
            args.min_m, args.max_m
        )));
    }
    let all_rules = (args.min_m..=args.max_m)
        .map(|m| rules(args.game, m, args.k))
        .collect::<Result<Vec<_>, _>>()?;
    let header = value_name(&Rules {
        m: 0,
        ..all_rules[0]
    })
    .replace("(0,", "(m,");
    if args.csv {
        println!("game,m,k,value,lo,hi,es");
    } else if !json {
        println!(
            "{:>4}  {:>10}  {:>10}",
            "m",
            header,
            format!("ES(m,{})", args.k)
        );
    }
    let mut exhausted = false;
    for rules in all_rules {
        let outcome = solve_one(rules, args.budget)?;
        let es = rules.es();
        let (lo, hi) = match outcome {
            Outcome::Exact { value } => (value, value),
            Outcome::Bounds { lo, hi } => {
                exhausted = true;
                (lo, hi)
            }
        };
        if json {
            let mut v = outcome_json(&rules, outcome);
            v["es"] = json!(es);
            println!("{v}");
        } else if args.csv {
            let value = outcome.exact().map(|v| v.to_string()).unwrap_or_default();
            println!(
                "{},{},{},{value},{lo},{hi},{es}",
                rules.kind, rules.m, rules.k
            );
        } else {
            let shown = match outcome {
                Outcome::Exact { value } => value.to_string(),
                Outcome::Bounds { lo, hi } => format!("[{lo},{hi}]"),
            };
            println!("{:>4}  {:>10}  {:>10}", rules.m, shown, es);
        }
    }
    if exhausted {
        Err(Failure::Budget)
    } else {
        Ok(())
    }
}

fn play(args: MatchArgs, json: bool) -> CmdResult {
    let rules = rules(args.game, args.m, args.k)?;
    let registry = StrategyRegistry::standard();
    // build both strategies first so bad ids are flag errors
    for (id, side) in [(&args.a, 'a'), (&args.b, 'b')] {
        let id = eso_core::harness::seeded_id(id, args.seed);
        let created = if side == 'a' {
            registry.create_a(&id, &rules).map(drop)
        } else {
            registry.create_b(&id, &rules).map(drop)
        };
        created.map_err(|e| Failure::Flags(e.to_string()))?;
    }
    if args.max_turns == Some(0) {
        return Err(Failure::Flags("--max-turns must be positive".into()));
    }
    let report = run_match(
        &registry,
        rules,
        &args.a,
        &args.b,
        args.max_turns,
        args.seed,
    )
    .map_err(|e| Failure::Runtime(e.to_string()))?;
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    if report.b_stats.fallbacks + report.a_stats.fallbacks > 0 {
        eprintln!(
            "fallbacks: a {}, b {}",
            report.a_stats.fallbacks, report.b_stats.fallbacks
        );
    }
    let t = &report.transcript;
    match &args.out {
        None => println!("{}", t.to_json()),
        Some(path) => {
            fs::write(path, t.to_json() + "\n")?;
            if json {
                println!(
                    "{}",
                    json!({ "turns": t.result.turns, "cause": t.result.cause, "out": path.display().to_string() })
                );
            } else {
                println!(
                    "{rules} {} vs {}: {} turns, {} (limit {})",
                    t.strategies.a,
                    t.strategies.b,
                    t.result.turns,
                    t.result.cause,
                    args.max_turns.unwrap_or_else(|| default_max_turns(&rules))
                );
            }
        }
    }
    match &t.result.diagnostic {
        Some(d) => Err(Failure::Runtime(d.clone())),
        None => Ok(()),
    }
}

fn counterexample_file(
    dir: &Path,
    report: &BoundReport,
    index: usize,
) -> io::Result<Option<PathBuf>> {
    let Some(t) = &report.counterexample else {
        return Ok(None);
    };
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}-{index}.json", report.claim));
    fs::write(&path, t.to_json() + "\n")?;
    Ok(Some(path))
}

fn verify(args: VerifyArgs, json: bool) -> CmdResult {
    let start = Instant::now();
    let reports = verify_all(args.suite).map_err(|e| Failure::Runtime(e.to_string()))?;
    let mut out = io::stdout().lock();
    for (i, r) in reports.iter().enumerate() {
        if json {
            writeln!(out, "{}", r.to_json_line(false))?;
        } else {
            writeln!(out, "{}", r.summary())?;
        }
        if !r.pass {
            if let Some(dir) = &args.counterexamples {
                if let Some(path) = counterexample_file(dir, r, i)? {
                    if json {
                        eprintln!("counterexample: {}", path.display());
                    } else {
                        writeln!(out, "  counterexample: {}", path.display())?;
                    }
                }
            }
        }
    }
    if let Some(path) = &args.report {
        let lines: String = reports
            .iter()
            .map(|r| r.to_json_line(true) + "\n")
            .collect();
        fs::write(path, lines)?;
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if !json {
        writeln!(
            out,
            "{} checks, {} passed, {failed} failed",
            reports.len(),
            reports.len() - failed
        )?;
    }
    eprintln!("suite {} finished in {:.2?}", args.suite, start.elapsed());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} checks failed")))
    }
}

/// Transcripts in `text`: a single (possibly pretty-printed) transcript,
/// or one per line, either bare or as the counterexample of a report line.
fn transcripts_in(text: &str) -> Result<Vec<Transcript>, Failure> {
    if let Ok(t) = Transcript::from_json(text) {
        return Ok(vec![t]);
    }
    let mut found = Vec::new();
    for (n, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| Failure::Check(format!("line {}: {e}", n + 1)))?;
        // report lines carry a transcript only when the check failed
        let candidate = if value.get("claim").is_some() {
            match value.get("counterexample") {
                Some(c) => c.clone(),
                None => continue,
            }
        } else {
            value
        };
        let t = Transcript::from_json(&candidate.to_string())
            .map_err(|e| Failure::Check(format!("line {}: {e}", n + 1)))?;
        found.push(t);
    }
    Ok(found)
}

fn replay(args: ReplayArgs, json: bool) -> CmdResult {
    let mut transcripts = Vec::new();
    for file in &args.files {
        let text = if file.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(file)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", file.display())))?
        };
        transcripts.extend(transcripts_in(&text)?);
    }
    if transcripts.is_empty() {
        return Err(Failure::Check("no transcripts found".into()));
    }
    let mut invalid = 0;
    for t in &transcripts {
        let checked = t.replay();
        if args.steps && !json {
            if let Ok(rules) = t.rules() {
                let mut board = eso_core::game::Board::new(rules);
                for (turn, &[column, reply]) in t.moves.iter().enumerate() {
                    if board.play(eso_core::game::Move { column, reply }).is_err() {
                        break;
                    }
                    println!(
                        "{:>3}  column {column:>2}  reply {reply:>2}  {:?}",
                        turn + 1,
                        board.ys()
                    );
                }
            }
        }
        match checked {
            Ok(board) => {
                let ys = board.ys();
                let ties = t.kind == GameKind::B;
                let up = eso_core::game::longest_up_run(ys, ties);
                let down = eso_core::game::longest_down_run(ys);
                if json {
                    println!(
                        "{}",
                        json!({ "valid": true, "game": t.kind, "m": t.m, "k": t.k, "turns": t.result.turns,
                                "cause": t.result.cause, "longest_up_run": up, "longest_down_run": down,
                                "strategies": t.strategies })
                    );
                } else {
                    println!(
                        "valid: {}({},{}) {} vs {}, {} turns, {} (up-run {up}, down-run {down})",
                        t.kind,
                        t.m,
                        t.k,
                        t.strategies.a,
                        t.strategies.b,
                        t.result.turns,
                        t.result.cause
                    );
                }
            }
            Err(e) => {
                invalid += 1;
                if json {
                    println!("{}", json!({ "valid": false, "error": e.to_string() }));
                } else {
                    println!("invalid: {e}");
                }
            }
        }
    }
    if invalid == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{invalid} of {} transcripts do not replay",
            transcripts.len()
        )))
    }
}

fn serve(args: ServeArgs) -> CmdResult {
    let config = eso_service::Config {
        hint_budget: Duration::from_secs_f64(args.hint_budget),
        ..Default::default()
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(eso_service::serve(args.addr, config))?;
    Ok(())
}
