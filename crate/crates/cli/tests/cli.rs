use std::path::PathBuf;
use std::process::{Command, Output};

use hullflow::report::{parse_report, Payload};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hullflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const TE2: &str = r#"{"ground":3,"systems":{"T":[[],[0],[1,2],[0,1,2]]},"permutations":{"s":[1,0,2]}}"#;

#[test]
fn classify_and_attractors() {
    let p = write("te2.json", TE2);
    let path = p.to_str().unwrap();
    let out = bin(&["classify", "T", "--instance", path]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["is_self_dual"], true);
    assert_eq!(v["result"]["is_T0"], false);
    assert_eq!(v["convention"], "full");

    let out = bin(&["attractors", "--flow", "s", "--covering", "powerset", "--instance", path]);
    assert_eq!(json(&out)["result"]["system"], serde_json::json!([[0, 1], [2]]));

    let out = bin(&["closure", "T", "--set", "0", "--instance", path, "--convention", "nonempty"]);
    let v = json(&out);
    assert_eq!(v["convention"], "nonempty");
    assert_eq!(v["result"]["subset"], serde_json::json!([0]));
}

#[test]
fn empty_system_prints_brackets() {
    let p = write("empty.json", r#"{"ground":2,"systems":{"E":[]}}"#);
    let out = bin(&["elementarize", "E", "--instance", p.to_str().unwrap()]);
    assert_eq!(json(&out)["result"]["system"], serde_json::json!([]));
}

#[test]
fn sweep_exit_codes() {
    let out = bin(&["sweep", "S3_8_all", "--n", "2", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(!v["result"]["counterexamples"].as_array().unwrap().is_empty());
    assert_eq!(v["result"]["seed"], 0);

    let out = bin(&["sweep", "B3_10", "--n", "3", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["fail_count"], 0);

    // a proved theorem with failures exits 1
    let out = bin(&["sweep", "S3_3", "--n", "2", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["nonsense"]).status.code(), Some(2));
    assert_eq!(bin(&["sweep", "S9_9", "--n", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["sweep", "S3_3", "--n", "9", "--exhaustive"]).status.code(), Some(2));
    let p = write("te2b.json", TE2);
    let out = bin(&["classify", "Q", "--instance", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Q"));
    let dup = write("dup.json", r#"{"ground":2,"systems":{"A":[[0],[0]]}}"#);
    let out = bin(&["classify", "A", "--instance", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let bad = write("bad.json", "{\"ground\":2,\n\"systems\":{\"A\":[[0],[\"x\"]]}}");
    let out = bin(&["classify", "A", "--instance", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn sweeps_are_deterministic() {
    let args = ["sweep", "COVAR", "--n", "3", "--samples", "200", "--seed", "9"];
    let a = bin(&args);
    let b = bin(&args);
    let mut more = args.to_vec();
    more.extend(["--jobs", "3"]);
    let c = bin(&more);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["result"], json(&c)["result"]);
}

#[test]
fn witnesses_replay_through_verify() {
    let out = bin(&["sweep", "S3_8_all", "--n", "2", "--exhaustive"]);
    let report = parse_report(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let Payload::Sweep(sw) = report.result else {
        panic!("sweep payload")
    };
    for (i, c) in sw.counterexamples.iter().enumerate() {
        let p = write(&format!("w{i}.json"), &c.witness.as_ref().unwrap().to_json());
        let out = bin(&["verify", "S3_8_all", "--instance", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["result"]["status"], "fails");
    }
}

#[test]
fn reports_round_trip() {
    let p = write("te2c.json", TE2);
    for args in [
        vec!["classify", "T"],
        vec!["orbits", "--flow", "s"],
        vec!["rooms", "--flow", "s", "--covering", "T"],
        vec!["cantor-check", "--function", "s", "--system", "T"],
        vec!["explication", "--function", "s", "--system", "T"],
        vec!["hull", "T", "--kind", "000", "--set", "1,2"],
        vec!["invariant-topology", "--flow", "s"],
        vec!["topo-attractors", "T"],
        vec!["verify", "S1_1"],
    ] {
        let mut a = args.clone();
        a.extend(["--instance", p.to_str().unwrap()]);
        let out = bin(&a);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let r = parse_report(&text).unwrap();
        assert_eq!(r.to_json(), text.trim_end());
        let t = bin(&[a.clone(), vec!["--format", "text"]].concat());
        assert!(String::from_utf8(t.stdout).unwrap().starts_with("command"));
    }
}
