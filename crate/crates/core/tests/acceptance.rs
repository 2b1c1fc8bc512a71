//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Red criteria are reported, not hidden. Set `HULLFLOW_ACCEPTANCE_STRICT=1`
//! to turn any red line into a nonzero exit.

use std::time::{Duration, Instant};

use hullflow::attract::{free_attractors, AttractorQuery};
use hullflow::dynsys::{orbit_partition, DiscreteFlow};
use hullflow::instance::{parse_instance, Instance};
use hullflow::setsys::SetSystem;
use hullflow::subset::GroundSet;
use hullflow::verify::enumerate::{enum_permutations, enum_topologies};
use hullflow::verify::{sweep, Mode, SweepOptions, SweepReport, TheoremId};
use hullflow::ClosureConvention::{self, Full, Nonempty};

struct Run {
    red: Vec<String>,
}

impl Run {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        println!("criterion {id:<4} {}  {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.red.push(id.to_string());
        }
    }
}

fn opts(conv: ClosureConvention) -> SweepOptions {
    SweepOptions {
        conv,
        ..Default::default()
    }
}

fn ex(id: TheoremId, n: usize, conv: ClosureConvention) -> SweepReport {
    sweep(id, n, Mode::Exhaustive, &opts(conv)).expect("sweep runs")
}

fn rnd(id: TheoremId, n: usize, samples: usize, seed: u64, conv: ClosureConvention) -> SweepReport {
    sweep(id, n, Mode::Random { samples, seed }, &opts(conv)).expect("sweep runs")
}

fn summary(reports: &[SweepReport]) -> (u64, u64, u64) {
    reports.iter().fold((0, 0, 0), |(i, f, s), r| {
        (i + r.instance_count, f + r.fail_count, s + r.skip_count)
    })
}

fn counts(reports: &[SweepReport]) -> String {
    let (i, f, s) = summary(reports);
    format!("instances={i} fails={f} skipped={s}")
}

fn first_witness(reports: &[SweepReport]) -> String {
    reports
        .iter()
        .flat_map(|r| r.counterexamples.first())
        .next()
        .map(|c| format!(" first: {} {}", c.note, c.witness.as_ref().unwrap().to_json()))
        .unwrap_or_default()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

/// Reflexive transitive relations on an n-set, counted by brute force.
fn preorders(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|p| p.0 != p.1).collect();
    (0u32..1 << pairs.len())
        .filter(|mask| {
            let rel = |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|b| mask >> b & 1 == 1);
            (0..n).all(|i| (0..n).all(|j| !rel(i, j) || (0..n).all(|k| !rel(j, k) || rel(i, k))))
        })
        .count()
}

fn lists(reports: &[SweepReport], expected: &Instance) -> bool {
    reports.iter().flat_map(|r| &r.counterexamples).any(|c| {
        let w = parse_instance(&c.witness.as_ref().unwrap().to_json()).unwrap();
        w.ground == expected.ground && w.systems == expected.systems && w.functions == expected.functions
    })
}

/// Brute force over the four subsets of {0,1}: A = {{0},{0,1}}, f = const 0.
/// Returns (commutes, C+∩C− over A, C+∩C− over A^c).
fn explication_oracle() -> (bool, bool, bool) {
    let a: [u8; 2] = [0b01, 0b11];
    let ac: Vec<u8> = a.iter().map(|m| !m & 0b11).collect();
    let f = |x: u8| if x == 0 { 0 } else { 0b01 };
    let cl = |x: u8| {
        let sup: Vec<u8> = ac.iter().copied().filter(|c| x & !c == 0).collect();
        if sup.is_empty() {
            0
        } else {
            sup.iter().fold(0b11, |acc, c| acc & c)
        }
    };
    let commutes = (0u8..4).all(|x| f(cl(x)) == cl(f(x)));
    let both = |sys: &[u8]| {
        let ms: Vec<u8> = sys.iter().copied().filter(|&m| m != 0).collect();
        let plus = ms.iter().all(|&m| ms.iter().any(|&mb| f(mb) & !m == 0));
        let minus = ms.iter().all(|&m| ms.iter().any(|&mb| mb & !f(m) == 0));
        plus && minus
    };
    (commutes, both(&a), both(&ac))
}

fn main() {
    let mut run = Run { red: vec![] };
    use TheoremId::*;

    // 1, 2
    let ((r1, oracle_ok), t1) = timed(|| {
        let oracle_ok = [3, 4].iter().all(|&n| enum_topologies(n).unwrap().count() == preorders(n));
        ([ex(S1_1, 3, Full), ex(S1_1, 4, Full)], oracle_ok)
    });
    run.line(
        "1",
        oracle_ok && summary(&r1).1 == 0 && t1 < Duration::from_secs(30),
        format!("{} topology counts 29/355 oracle={oracle_ok} {:?}", counts(&r1), t1),
    );
    let r2 = [ex(K1_2, 3, Full), ex(K1_2, 4, Full)];
    run.line("2", summary(&r2).1 == 0, counts(&r2));

    // 3
    let (r3, t3) = timed(|| [ex(L1_3, 4, Full)]);
    run.line(
        "3",
        summary(&r3).1 == 0 && t3 < Duration::from_secs(120),
        format!(
            "{} invariant_chi_fail={} {:?}{}",
            counts(&r3),
            r3[0].tally("invariant_chi_fail"),
            t3,
            first_witness(&r3)
        ),
    );

    // 4
    let full: Vec<_> = (1..=4).map(|n| ex(IdemYdwed, n, Full)).collect();
    let ne: Vec<_> = (1..=4).map(|n| ex(IdemYdwed, n, Nonempty)).collect();
    let y2 = parse_instance(r#"{"ground":2,"systems":{"A":[[0],[0,1]]}}"#).unwrap();
    let listed = lists(&ne, &y2);
    run.line(
        "4",
        summary(&full).1 == 0 && summary(&ne).1 >= 1 && listed,
        format!("full: {}; nonempty: {} witness listed={listed}", counts(&full), counts(&ne)),
    );

    // 5
    for (tag, conv) in [("5a", Full), ("5b", Nonempty)] {
        let r: Vec<_> = (2..=6).map(|n| rnd(L3_1, n, 2000, 31 + n as u64, conv)).collect();
        run.line(tag, summary(&r).1 == 0, format!("{} {}{}", conv.name(), counts(&r), first_witness(&r)));
    }

    // 6, 7
    let (r6, t6) = timed(|| [ex(S3_3, 3, Full)]);
    run.line(
        "6",
        summary(&r6).1 == 0 && t6 < Duration::from_secs(300),
        format!(
            "{} premise_true={} partition_part_fails={} attractor_part_fails={} {:?}{}",
            counts(&r6),
            r6[0].tally("premise_true"),
            r6[0].tally("partition_part_fails"),
            r6[0].tally("attractor_part_fails"),
            t6,
            first_witness(&r6)
        ),
    );
    let r7 = [ex(B3_4, 3, Full)];
    run.line(
        "7",
        summary(&r7).1 == 0,
        format!(
            "{} attraktogen={} sandwich_fails={}",
            counts(&r7),
            r7[0].tally("attraktogen"),
            r7[0].tally("sandwich_fails")
        ),
    );

    // 8
    let g4 = GroundSet::new(4).unwrap();
    let perms = enum_permutations(4).unwrap();
    let bad8 = perms
        .iter()
        .filter(|p| {
            let flow = DiscreteFlow::cyclic((*p).clone());
            let at = free_attractors(&AttractorQuery::new(flow.clone(), SetSystem::power_set(g4).unwrap())).unwrap();
            at != orbit_partition(&flow)
        })
        .count();
    run.line("8", bad8 == 0, format!("permutations={} fails={bad8}", perms.len()));

    // 9
    let coincide: Vec<_> = (1..=4).map(|n| ex(B2_3d, n, Full)).collect();
    let chain: Vec<_> = [(2, 334), (3, 333), (4, 333)]
        .iter()
        .map(|&(n, s)| rnd(ChainKarrenk, n, s, 90 + n as u64, Full))
        .collect();
    let empty_room_fails: u64 = chain.iter().map(|r| r.tally("empty_pre_room_fail")).sum();
    run.line(
        "9",
        summary(&coincide).1 == 0 && summary(&chain).1 == 0,
        format!(
            "power-set coincidence: {}; chain: {} fails with an empty pre-room={}{}",
            counts(&coincide),
            counts(&chain),
            empty_room_fails,
            first_witness(&chain)
        ),
    );

    // 10
    let r10: Vec<_> = (1..=4).map(|n| rnd(Covar, n, 250, 100 + n as u64, Full)).collect();
    run.line("10", summary(&r10).1 == 0, counts(&r10));

    // 11
    let r11 = [ex(B3_10, 3, Full)];
    run.line(
        "11",
        summary(&r11).1 == 0,
        format!("{} inverse_swap_fails={}", counts(&r11), r11[0].tally("inverse_swap_fails")),
    );

    // 12
    let r12a = [ex(B3_6, 3, Full)];
    let r12b = [ex(B3_7, 3, Full)];
    run.line(
        "12",
        summary(&r12a).1 == 0 && summary(&r12b).1 == 0,
        format!(
            "representation: {}{}; integrity: {}{}",
            counts(&r12a),
            first_witness(&r12a),
            counts(&r12b),
            first_witness(&r12b)
        ),
    );

    // 13
    let r13 = [ex(K3_9, 3, Full)];
    run.line("13", summary(&r13).1 == 0, format!("{}{}", counts(&r13), first_witness(&r13)));

    // 14
    let bij: Vec<_> = (2..=3).map(|n| ex(S3_8Bij, n, Full)).collect();
    run.line("14a", summary(&bij).1 == 0, format!("{}{}", counts(&bij), first_witness(&bij)));
    let all: Vec<_> = (2..=3).map(|n| ex(S3_8All, n, Full)).collect();
    let known = parse_instance(r#"{"ground":2,"systems":{"A":[[0],[0,1]]},"functions":{"f":[0,0]}}"#).unwrap();
    let (lhs, rhs_a, rhs_ac) = explication_oracle();
    let oracle_disagrees = lhs != rhs_a || lhs != rhs_ac;
    let labelled = all.iter().all(|r| r.label.contains("open question") && !r.proved_failure());
    let listed = lists(&all, &known);
    run.line(
        "14b",
        listed && oracle_disagrees && labelled,
        format!(
            "{} witness listed={listed} oracle lhs={lhs} rhs_A={rhs_a} rhs_Ac={rhs_ac} label=\"{}\"",
            counts(&all),
            all[0].label
        ),
    );

    // 15
    let mut identical = true;
    for id in TheoremId::all() {
        let a = serde_json::to_string(&rnd(id, 3, 200, 7, Full)).unwrap();
        let b = serde_json::to_string(
            &sweep(
                id,
                3,
                Mode::Random { samples: 200, seed: 7 },
                &SweepOptions {
                    jobs: Some(1),
                    ..Default::default()
                },
            )
            .unwrap(),
        )
        .unwrap();
        let c = serde_json::to_string(&ex(id, 2, Full)).unwrap();
        let d = serde_json::to_string(&ex(id, 2, Full)).unwrap();
        identical &= a == b && c == d;
    }
    run.line("15", identical, "random n=3 and exhaustive n=2 sweeps of every theorem, repeated".into());

    println!("red criteria: {}", if run.red.is_empty() { "none".into() } else { run.red.join(" ") });
    if !run.red.is_empty() && std::env::var_os("HULLFLOW_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
