use std::path::Path;
use std::process::{Command, Output};

fn eso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eso"))
        .args(args)
        .env_remove("ESO_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_values() {
    let out = eso(&["solve", "--game", "a", "--m", "3", "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ESO(3,3) = 4\n");

    let out = eso(&["solve", "--game", "b", "--m", "5", "--k", "3"]);
    assert_eq!(stdout(&out), "B(5,3) = 5\n");

    let out = eso(&["--json", "solve", "--m", "4", "--k", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 8);
    assert_eq!(v["status"], "exact");
}

#[test]
fn exhausted_budget_prints_an_interval_and_exits_four() {
    let out = eso(&["solve", "--m", "6", "--k", "4", "--budget", "0.05"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    let (lo, hi) = text
        .trim()
        .strip_prefix("ESO(6,4) ∈ [")
        .and_then(|s| s.strip_suffix(']'))
        .and_then(|s| s.split_once(','))
        .unwrap();
    let (lo, hi): (usize, usize) = (lo.parse().unwrap(), hi.parse().unwrap());
    assert!(lo <= hi && hi <= 16, "{text}");
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(eso(&["solve", "--m", "3"]).status.code(), Some(2));
    assert_eq!(
        eso(&["solve", "--m", "3", "--k", "3", "--budget", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eso(&["solve", "--game", "b", "--m", "3", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eso(&[
            "match",
            "--m",
            "5",
            "--k",
            "3",
            "--a",
            "a:combined",
            "--b",
            "b:nosuch"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        eso(&["match", "--m", "5", "--k", "3", "--a", "b:tiers", "--b", "b:tiers"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(eso(&["verify", "--suite", "huge"]).status.code(), Some(2));
    assert_eq!(
        eso(&["table", "--min-m", "5", "--max-m", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_row_and_csv() {
    let out = eso(&[
        "table", "--game", "a", "--min-m", "3", "--max-m", "7", "--k", "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    let values: Vec<&str> = rows.iter().map(|r| r[1]).collect();
    let es: Vec<&str> = rows.iter().map(|r| r[2]).collect();
    assert_eq!(values, ["4", "6", "7", "9", "10"]);
    assert_eq!(es, ["5", "7", "9", "11", "13"]);

    let csv = stdout(&eso(&["table", "--min-m", "3", "--max-m", "4", "--csv"]));
    assert_eq!(
        csv,
        "game,m,k,value,lo,hi,es\nA,3,3,4,4,4,5\nA,4,3,6,6,6,7\n"
    );
}

#[test]
fn match_output_replays_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "match",
        "--m",
        "6",
        "--k",
        "3",
        "--a",
        "a:random",
        "--b",
        "b:fracturing",
        "--seed",
        "9",
    ];
    let first = eso(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&eso(&args)));
    let t: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(t["v"], 1);
    assert_eq!(t["strategies"]["a"], "a:random(9)");

    let file = dir.path().join("t.json");
    let out = eso(&[&args[..], &["--out", file.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), stdout(&first));

    let replayed = eso(&["--json", "replay", file.to_str().unwrap()]);
    assert!(replayed.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&replayed)).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["turns"], t["result"]["turns"]);
}

#[test]
fn replay_rejects_tampered_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let t = stdout(&eso(&[
        "match",
        "--m",
        "4",
        "--k",
        "3",
        "--a",
        "a:middling",
        "--b",
        "b:random(1)",
    ]));
    let mut v: serde_json::Value = serde_json::from_str(&t).unwrap();
    v["result"]["state"][0] = serde_json::json!(99);
    let file = dir.path().join("bad.json");
    std::fs::write(&file, v.to_string()).unwrap();
    let out = eso(&["replay", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).starts_with("invalid:"));
}

/// The fast suite contains checks that currently fail (documented in the
/// README); the command must say so with exit code 3 and leave replayable
/// counterexamples behind.
#[test]
fn verify_reports_failures_with_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let cx = dir.path().join("cx");
    let report = dir.path().join("report.jsonl");
    let out = eso(&[
        "--json",
        "verify",
        "--suite",
        "fast",
        "--counterexamples",
        cx.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let failed = lines.iter().filter(|l| l["pass"] == false).count();
    assert_eq!(out.status.code(), Some(if failed == 0 { 0 } else { 3 }));
    assert!(lines.iter().all(|l| l.get("runtime_ms").is_none()));
    assert!(lines.iter().any(|l| l["claim"] == "table"));

    let written = std::fs::read_to_string(&report).unwrap();
    assert_eq!(written.lines().count(), lines.len());
    let files = std::fs::read_dir(&cx).map(|d| d.count()).unwrap_or(0);
    assert_eq!(
        files,
        lines
            .iter()
            .filter(|l| l["pass"] == false && l.get("counterexample").is_some())
            .count()
    );

    if failed > 0 {
        let replayed = eso(&["replay", report.to_str().unwrap()]);
        assert!(replayed.status.success(), "{}", stdout(&replayed));
    }
}

#[test]
fn cache_directory_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_eso"))
            .args(["solve", "--m", "4", "--k", "4"])
            .env("ESO_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(Path::new(&cache).join("eso-a-4-4.bin").exists());
    let second = run();
    assert_eq!(stdout(&first), stdout(&second));
    assert!(String::from_utf8_lossy(&second.stderr).contains("loaded"));
}
