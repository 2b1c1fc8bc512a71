use hullflow::instance::{parse_instance, WireInstance};
use hullflow::verdict::Status;
use hullflow::verify::{check_theorem, sweep, Mode, SweepOptions, TheoremId};
use hullflow::ClosureConvention;

fn replay_all(id: TheoremId, n: usize, mode: Mode, conv: ClosureConvention) {
    let opts = SweepOptions {
        conv,
        ..Default::default()
    };
    let r = sweep(id, n, mode, &opts).unwrap();
    for c in &r.counterexamples {
        let w: &WireInstance = c.witness.as_ref().expect("failures carry witnesses");
        let inst = parse_instance(&w.to_json()).unwrap();
        let again = check_theorem(id, &inst, conv).unwrap();
        assert_eq!(again.status, Status::Fails, "{id}: {}", w.to_json());
        assert_eq!(again.note, c.note);
    }
}

#[test]
fn counterexamples_replay() {
    for conv in ClosureConvention::all() {
        for id in TheoremId::all() {
            replay_all(id, 2, Mode::Exhaustive, conv);
            replay_all(id, 3, Mode::Random { samples: 60, seed: 5 }, conv);
        }
    }
}

#[test]
fn sweeps_are_byte_identical() {
    for id in [TheoremId::S3_3, TheoremId::Covar, TheoremId::L1_3, TheoremId::S3_8All] {
        let mode = Mode::Random { samples: 300, seed: 42 };
        let run = |jobs| {
            let opts = SweepOptions {
                jobs: Some(jobs),
                ..Default::default()
            };
            serde_json::to_string(&sweep(id, 3, mode, &opts).unwrap()).unwrap()
        };
        assert_eq!(run(1), run(4));
        assert_eq!(run(2), run(2));
    }
}

#[test]
fn spec_instances() {
    let t = parse_instance(r#"{"ground":3,"systems":{"T":[[],[0],[1,2],[0,1,2]]}}"#).unwrap();
    assert!(check_theorem(TheoremId::S1_1, &t, ClosureConvention::Full).unwrap().is_holds());

    let e = parse_instance(r#"{"ground":2,"systems":{"A":[[0],[0,1]]},"functions":{"f":[0,0]}}"#).unwrap();
    let v = check_theorem(TheoremId::S3_8All, &e, ClosureConvention::Full).unwrap();
    assert!(v.is_fails());
    let w = parse_instance(&v.witness.unwrap().to_json()).unwrap();
    assert_eq!((w.systems, w.functions), (e.systems, e.functions));

    // the wrong shape is a malformed-instance error
    assert!(check_theorem(TheoremId::S3_3, &t, ClosureConvention::Full).is_err());
}

#[test]
fn exhaustive_examples() {
    let opts = SweepOptions::default();
    assert_eq!(sweep(TheoremId::B3_10, 3, Mode::Exhaustive, &opts).unwrap().fail_count, 0);
    assert!(sweep(TheoremId::S3_8All, 2, Mode::Exhaustive, &opts).unwrap().fail_count >= 1);
    assert_eq!(sweep(TheoremId::IdemYdwed, 4, Mode::Exhaustive, &opts).unwrap().fail_count, 0);
    let ne = SweepOptions {
        conv: ClosureConvention::Nonempty,
        ..Default::default()
    };
    let r = sweep(TheoremId::IdemYdwed, 2, Mode::Exhaustive, &ne).unwrap();
    let witness = parse_instance(r#"{"ground":2,"convention":"nonempty","systems":{"A":[[0],[0,1]]}}"#).unwrap();
    assert!(r
        .counterexamples
        .iter()
        .any(|c| parse_instance(&c.witness.as_ref().unwrap().to_json()).unwrap() == witness));
}
