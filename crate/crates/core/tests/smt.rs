//! Gateway tests against a real solver (`z3` unless `$BOOLABS_SOLVER` says
//! otherwise) and against scripted fake solvers.

use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::Path;
use std::time::Duration;

use boolabs_core::abstraction::{ChoiceSet, QuasiReaction};
use boolabs_core::io::parse_spec;
use boolabs_core::model::collect_literals;
use boolabs_core::search::{model_loop, nested_loop, ClauseCause, Heuristics, SearchOptions};
use boolabs_core::smt::{build_query, QueryContext, QueryTag, SmtGateway, SolverCommand, ValidityOracle, Verdict, DEFAULT_TIMEOUT};
use boolabs_core::Error;
use proptest::prelude::*;

fn running(theory: &str) -> QueryContext {
    let text = format!(
        "theory {theory}\nenv x: Int\nsys y: Int\nspec: G(((x < 2) -> X (y > 1)) & ((x >= 2) -> (y < x)))\n"
    );
    let spec = parse_spec(&text).unwrap();
    QueryContext::new(spec.theory, collect_literals(&spec))
}

fn gateway(ctx: &QueryContext, cache: bool) -> SmtGateway {
    SmtGateway::new(ctx.clone(), &SolverCommand::from_env(), DEFAULT_TIMEOUT, cache).unwrap()
}

fn reaction(p: &[usize]) -> QuasiReaction {
    QuasiReaction::reaction(ChoiceSet::from_indices(8, p.iter().copied()))
}

// Choice bits: 0 = (x < 2), 1 = (y > 1), 2 = (y < x).

#[test]
fn running_example_verdicts() {
    let ctx = running("LIA");
    let mut gw = gateway(&ctx, true);
    // x < 2 with y > 1 and y in either relation to x, or y <= 1 and y < x.
    assert_eq!(gw.check(&reaction(&[1, 3, 5]), QueryTag::Outer).unwrap(), Verdict::Valid);
    assert_eq!(gw.check(&reaction(&[2, 4]), QueryTag::Outer).unwrap(), Verdict::Valid);
    assert_eq!(gw.check(&reaction(&[]), QueryTag::Outer).unwrap(), Verdict::Invalid);
    // x < 2, y > 1, y < x has no integer solution.
    let q = QuasiReaction::new(ChoiceSet::from_indices(8, [7]), ChoiceSet::empty(8)).unwrap();
    assert_eq!(gw.check(&q, QueryTag::Outer).unwrap(), Verdict::Invalid);
    // Over the reals it does, with x in (1, 2).
    let ctx = running("LRA");
    assert_eq!(gateway(&ctx, true).check(&q, QueryTag::Outer).unwrap(), Verdict::Valid);
}

#[test]
fn bottom_is_valid() {
    let ctx = running("LIA");
    let mut gw = gateway(&ctx, true);
    assert_eq!(gw.check(&QuasiReaction::bottom(8), QueryTag::Inner).unwrap(), Verdict::Valid);
    let s = gw.stats();
    assert_eq!((s.outer_queries, s.inner_queries), (0, 1));
}

fn arb_quasi() -> impl Strategy<Value = QuasiReaction> {
    proptest::collection::vec(0u8..3, 8).prop_map(|v| {
        let p = ChoiceSet::from_indices(8, (0..8).filter(|&c| v[c] == 1));
        let a = ChoiceSet::from_indices(8, (0..8).filter(|&c| v[c] == 2));
        QuasiReaction::new(p, a).unwrap()
    })
}

/// A random `q ⪯ q′` pair: `q′` and a sub-selection of it.
fn arb_pair() -> impl Strategy<Value = (QuasiReaction, QuasiReaction)> {
    (arb_quasi(), proptest::collection::vec(any::<bool>(), 8)).prop_map(|(hi, keep)| {
        let kept = ChoiceSet::from_indices(8, (0..8).filter(|&c| keep[c]));
        let lo = QuasiReaction::new(hi.p.intersection(&kept), hi.a.intersection(&kept)).unwrap();
        (lo, hi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cache_is_transparent(qs in proptest::collection::vec(arb_quasi(), 1..12), theory in prop_oneof![Just("LIA"), Just("LRA")]) {
        let ctx = running(theory);
        let mut cached = gateway(&ctx, true);
        let mut plain = gateway(&ctx, false);
        // Each query twice: the second is a cache hit on the cached side.
        for q in qs.iter().chain(&qs) {
            prop_assert_eq!(cached.check(q, QueryTag::Outer).unwrap(), plain.check(q, QueryTag::Outer).unwrap());
        }
        let (c, p) = (cached.stats(), plain.stats());
        prop_assert_eq!(p.outer_queries, 2 * qs.len() as u64);
        prop_assert_eq!(c.outer_queries + c.cache_hits, p.outer_queries);
        prop_assert!(c.cache_hits >= qs.len() as u64);
    }

    #[test]
    fn validity_is_monotone((lo, hi) in arb_pair(), theory in prop_oneof![Just("LIA"), Just("LRA")]) {
        prop_assert!(lo.leq(&hi));
        let mut gw = gateway(&running(theory), false);
        let v_lo = gw.check(&lo, QueryTag::Outer).unwrap();
        let v_hi = gw.check(&hi, QueryTag::Outer).unwrap();
        prop_assert!(!(v_lo == Verdict::Invalid && v_hi == Verdict::Valid), "{:?} invalid but {:?} valid", lo, hi);
    }

    #[test]
    fn scripts_are_byte_identical(q in arb_quasi()) {
        let ctx = running("LIA");
        let a = build_query(&q, &ctx).unwrap().script();
        let b = build_query(&q.clone(), &running("LIA")).unwrap().script();
        prop_assert_eq!(a, b);
    }
}

fn fake_solver(dir: &Path, reply: &str) -> SolverCommand {
    let path = dir.join("fake-solver");
    let script = format!(
        "#!/bin/sh\nwhile read -r line; do\n  case \"$line\" in\n    *check-sat*) {reply} ;;\n  esac\ndone\n"
    );
    fs::write(&path, script).unwrap();
    fs::set_permissions(&path, fs::Permissions::from_mode(0o755)).unwrap();
    SolverCommand::parse(path.to_str().unwrap()).unwrap()
}

fn fake_check(reply: &str, timeout: Duration) -> Result<Verdict, Error> {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_solver(dir.path(), reply);
    let mut gw = SmtGateway::new(running("LIA"), &cmd, timeout, true)?;
    gw.check(&reaction(&[1]), QueryTag::Outer)
}

#[test]
fn unknown_answers_abort_the_run() {
    let e = fake_check("echo unknown", DEFAULT_TIMEOUT).unwrap_err();
    assert!(matches!(e, Error::Unknown(_)), "{e}");
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn malformed_replies_are_solver_errors() {
    let e = fake_check("echo banana", DEFAULT_TIMEOUT).unwrap_err();
    assert!(matches!(&e, Error::Solver(m) if m.contains("banana")), "{e}");
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn crashes_are_solver_errors() {
    let e = fake_check("exit 1", DEFAULT_TIMEOUT).unwrap_err();
    assert!(matches!(e, Error::Solver(_)), "{e}");
}

#[test]
fn slow_solvers_time_out() {
    let e = fake_check("sleep 5", Duration::from_millis(200)).unwrap_err();
    assert!(matches!(&e, Error::Solver(m) if m.contains("timed out")), "{e}");
}

#[test]
fn missing_solver_is_reported() {
    let cmd = SolverCommand::parse("/nonexistent/solver-binary").unwrap();
    let e = SmtGateway::new(running("LIA"), &cmd, DEFAULT_TIMEOUT, true).err().unwrap();
    assert!(matches!(e, Error::Solver(_)), "{e}");
}

#[test]
fn fake_answers_are_taken_at_face_value() {
    assert_eq!(fake_check("echo sat", DEFAULT_TIMEOUT).unwrap(), Verdict::Valid);
    assert_eq!(fake_check("echo unsat", DEFAULT_TIMEOUT).unwrap(), Verdict::Invalid);
}

#[test]
fn clause_log_replays_against_the_solver() {
    for theory in ["LIA", "LRA"] {
        let ctx = running(theory);
        let runs = [
            model_loop(&mut gateway(&ctx, true), 3, SearchOptions::default()).unwrap(),
            nested_loop(&mut gateway(&ctx, true), 3, Heuristics::default_for(3), SearchOptions::default()).unwrap(),
        ];
        let mut replay = gateway(&ctx, false);
        for out in runs {
            for p in out.vr.entries() {
                let q = QuasiReaction::reaction(p.clone());
                assert_eq!(replay.check(&q, QueryTag::Outer).unwrap(), Verdict::Valid);
            }
            for clause in &out.clauses {
                match &clause.cause {
                    ClauseCause::Valid(p) => assert!(out.vr.entries().contains(p)),
                    ClauseCause::Invalid(q) | ClauseCause::Reaction(q) => {
                        assert_eq!(replay.check(q, QueryTag::Outer).unwrap(), Verdict::Invalid, "{q:?}");
                        for mask in 0u64..256 {
                            let p = ChoiceSet::from_mask(8, mask);
                            let blocked = clause.literals.iter().all(|&(c, pos)| p.contains(c) != pos);
                            assert_eq!(blocked, q.leq(&QuasiReaction::reaction(p)));
                        }
                    }
                }
            }
        }
    }
}
