use eso_core::game::{Board, GameKind, Move, RankedState, Rules};
use eso_core::harness::{run_match, Cause, Transcript};
use eso_core::solver::{plain_minimax, Solver};
use eso_core::strategy::{RegistryError, StrategyRegistry};
use proptest::prelude::*;

/// Plays `choices` as (column, reply) picks, each reduced modulo the number
/// of options, stopping at the end of the game.
fn random_board(rules: Rules, choices: &[(usize, usize)]) -> Board {
    let mut board = Board::new(rules);
    for &(c, r) in choices {
        if board.terminal().is_some() {
            break;
        }
        let column = c % (board.len() + 1);
        let reply = board.replies().start() + r % board.num_replies();
        board
            .play(Move { column, reply })
            .expect("reduced moves are legal");
    }
    board
}

fn rules_strategy() -> impl Strategy<Value = Rules> {
    prop_oneof![
        (3usize..=8).prop_map(|m| Rules::a(m, 3)),
        (3usize..=5, 3usize..=4).prop_map(|(m, k)| Rules::a(m, k)),
        (3usize..=8, 3usize..=5).prop_map(|(m, k)| Rules::b(m, k)),
    ]
}

fn strategy_ids(kind: GameKind, seed: u64) -> (Vec<String>, Vec<String>) {
    let registry = StrategyRegistry::standard();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for name in registry.names() {
        if name.ends_with(":optimal") && kind == GameKind::B {
            continue;
        }
        let id = if name.ends_with(":random") {
            format!("{name}({seed})")
        } else {
            name
        };
        if id.starts_with("a:") {
            a.push(id);
        } else {
            b.push(id);
        }
    }
    (a, b)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn transcripts_round_trip_and_replay(
        rules in rules_strategy(),
        seed in any::<u64>(),
        pick in any::<(usize, usize)>(),
    ) {
        let registry = StrategyRegistry::standard();
        let (a_ids, b_ids) = strategy_ids(rules.kind, seed);
        let a = &a_ids[pick.0 % a_ids.len()];
        let b = &b_ids[pick.1 % b_ids.len()];
        let report = match run_match(&registry, rules, a, b, None, Some(seed)) {
            Ok(report) => report,
            Err(eso_core::harness::HarnessError::Registry(RegistryError::Rejected { .. })) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let t = &report.transcript;
        prop_assert_ne!(t.result.cause, Cause::Error, "{:?}", t.result.diagnostic);
        prop_assert!(t.result.turns <= rules.es() + 1);

        let parsed = Transcript::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&parsed, t);
        parsed.replay().unwrap();

        let again = run_match(&registry, rules, a, b, None, Some(seed)).unwrap();
        prop_assert_eq!(&again.transcript, t);
    }

    #[test]
    fn tampered_transcripts_do_not_replay(m in 3usize..=7, seed in any::<u64>(), at in any::<usize>()) {
        let registry = StrategyRegistry::standard();
        let t = run_match(&registry, Rules::a(m, 3), "a:random", "b:random", None, Some(seed)).unwrap().transcript;
        let turn = at % t.moves.len();

        let mut off_board = t.clone();
        off_board.moves[turn][0] = turn + 1;
        prop_assert!(off_board.replay().is_err());

        let mut miscounted = t.clone();
        miscounted.result.turns += 1;
        prop_assert!(miscounted.replay().is_err());

        let mut wrong_cause = t.clone();
        wrong_cause.result.cause = if t.result.cause == Cause::UpRun { Cause::DownRun } else { Cause::UpRun };
        prop_assert!(wrong_cause.replay().is_err());
    }

    #[test]
    fn solver_value_is_invariant_under_rotation(
        (m, k) in (3usize..=5, 3usize..=4),
        choices in prop::collection::vec(any::<(usize, usize)>(), 0..7),
    ) {
        let rules = Rules::a(m, k);
        let board = random_board(rules, &choices);
        let ranked = board.ranked();
        let rotated: RankedState = ranked.rotated();
        let mut solver = Solver::new(rules);
        let v = solver.value(ranked.ranks()).unwrap();
        prop_assert_eq!(v, solver.value(rotated.ranks()).unwrap());
        prop_assert!(v + board.len() <= rules.es() + 1);
    }

    #[test]
    fn solver_matches_plain_minimax(
        kind in prop_oneof![Just(GameKind::A), Just(GameKind::B)],
        m in 3usize..=4,
        choices in prop::collection::vec(any::<(usize, usize)>(), 0..5),
    ) {
        let rules = Rules::new(kind, m, 3).unwrap();
        let board = random_board(rules, &choices);
        let mut solver = Solver::new(rules);
        prop_assert_eq!(solver.value(board.ys()).unwrap(), plain_minimax(&rules, board.ys()));
    }

    #[test]
    fn runs_are_order_type_invariants(
        m in 3usize..=6,
        choices in prop::collection::vec(any::<(usize, usize)>(), 0..10),
    ) {
        let board = random_board(Rules::a(m, 3), &choices);
        let ranked = board.ranked();
        let rotated = ranked.rotated();
        prop_assert_eq!(ranked.longest_up_run(), rotated.longest_up_run());
        prop_assert_eq!(ranked.longest_down_run(), rotated.longest_down_run());
        prop_assert_eq!(rotated.rotated(), ranked);
    }
}

#[test]
fn every_strategy_is_reachable_by_id() {
    let registry = StrategyRegistry::standard();
    let names = registry.names();
    for id in [
        "a:combined",
        "a:middling",
        "a:wbarb",
        "a:halving",
        "a:optimal",
        "a:random",
        "b:fracturing",
        "b:tiers",
        "b:boundary-tiers",
        "b:nonextend",
        "b:optimal",
        "b:random",
    ] {
        assert!(names.iter().any(|n| n == id), "{id} missing from {names:?}");
    }
    assert!(registry
        .create_b("b:fracturing(1)", &Rules::a(5, 3))
        .is_ok());
    assert!(registry.create_a("a:random(7)", &Rules::a(5, 3)).is_ok());
    assert!(registry.create_a("a:nosuch", &Rules::a(5, 3)).is_err());
    assert!(registry.create_a("b:tiers", &Rules::b(5, 4)).is_err());
}

#[test]
fn optimal_play_realises_the_game_value() {
    let registry = StrategyRegistry::standard();
    for (m, k, value) in [(3, 3, 4), (4, 3, 6), (5, 3, 7), (4, 4, 8)] {
        let report = run_match(
            &registry,
            Rules::a(m, k),
            "a:optimal",
            "b:optimal",
            None,
            None,
        )
        .unwrap();
        assert_eq!(report.turns(), value, "A({m},{k})");
    }
    for (m, k, value) in [(4, 4, 7), (5, 4, 9)] {
        let report = run_match(
            &registry,
            Rules::b(m, k),
            "a:optimal",
            "b:optimal",
            None,
            None,
        )
        .unwrap();
        assert_eq!(report.turns(), value, "B({m},{k})");
    }
}
