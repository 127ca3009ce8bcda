use std::sync::atomic::AtomicBool;

use proptest::prelude::*;

use sclab::harness::*;
use sclab::Error;

fn exec(cfg: &ExperimentConfig) -> (Status, String, String) {
    let (mut rec, mut tab) = (Vec::new(), Vec::new());
    let st = run(cfg, &mut Sinks { records: Some(&mut rec), table: &mut tab }, &AtomicBool::new(false)).unwrap();
    (st, String::from_utf8(rec).unwrap(), String::from_utf8(tab).unwrap())
}

fn base(mode: Mode, k: usize, n: usize, problem: &str) -> ExperimentConfig {
    ExperimentConfig { mode: Some(mode), k: Some(k), n: Some(n), problem: Some(problem.into()), seed: Some(5), ..Default::default() }
}

#[test]
fn output_bytes_do_not_depend_on_jobs() {
    let configs = [
        ExperimentConfig { osc_type: Some("6;4;2".into()), instances: Some(12), ..base(Mode::Osculating, 2, 5, "1^6") },
        ExperimentConfig { instances: Some(10), ..base(Mode::Secant, 2, 4, "1^4") },
        ExperimentConfig { samples: Some(40), ..base(Mode::Galois, 2, 5, "1^6") },
        ExperimentConfig { budget: Some(64), ..base(Mode::Galois, 4, 8, "2,2^4") },
        ExperimentConfig { mode: Some(Mode::Family), k: Some(2), n: Some(5), instances: Some(9), seed: Some(1), ..Default::default() },
    ];
    for cfg in &configs {
        let outs: Vec<_> = [1, 4, 8].iter().map(|&j| exec(&ExperimentConfig { jobs: Some(j), ..cfg.clone() })).collect();
        assert!(!outs[0].1.is_empty(), "{cfg:?}");
        assert_eq!(outs[0], outs[1], "{cfg:?}");
        assert_eq!(outs[0], outs[2], "{cfg:?}");
    }
}

#[test]
fn records_are_json_lines() {
    let cfg = ExperimentConfig { osc_type: Some("4;0".into()), instances: Some(3), ..base(Mode::Osculating, 2, 4, "1^4") };
    let (st, rec, tab) = exec(&cfg);
    assert_eq!(st, Status::Complete);
    let lines: Vec<serde_json::Value> = rec.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 6);
    for (i, v) in lines.iter().enumerate() {
        assert_eq!(v["instance"], i as u64);
        assert_eq!(v["seed"], 5);
    }
    let table: serde_json::Value = serde_json::from_str(&tab).unwrap();
    assert_eq!(table["degree"], 2);
    assert_eq!(table["rejections"], 0);
}

#[test]
fn csv_table() {
    let cfg = ExperimentConfig { instances: Some(4), format: Some(Format::Csv), ..base(Mode::Osculating, 2, 4, "1^4") };
    let (_, _, tab) = exec(&cfg);
    assert!(tab.lines().count() >= 2);
    assert!(tab.lines().all(|l| l.contains(',')));
}

#[test]
fn validation_errors() {
    let bad = base(Mode::Degree, 2, 4, "1^3");
    let mut sink = Vec::new();
    let e = run(&bad, &mut Sinks { records: None, table: &mut sink }, &AtomicBool::new(false)).unwrap_err();
    assert_eq!(error_exit_code(&e), 2);
    let v: serde_json::Value = serde_json::from_str(&error_json(&e)).unwrap();
    assert_eq!(v["error"], "validation");
    let e = parse_problem("2,1;x", 3, 6).unwrap_err();
    assert!(matches!(e, Error::Parse { pos: 4, .. }));
    let v: serde_json::Value = serde_json::from_str(&error_json(&e)).unwrap();
    assert_eq!((v["error"].as_str(), v["position"].as_u64()), (Some("parse"), Some(4)));
    assert!(ExperimentConfig::from_json(r#"{"mode":"degree","k":"two"}"#).is_err());
}

#[test]
fn status_codes() {
    assert_eq!(Status::Complete.exit_code(), 0);
    assert_eq!(Status::Degenerate.exit_code(), 3);
    assert_eq!(Status::Truncated.exit_code(), 130);
}

fn config_strategy() -> impl Strategy<Value = ExperimentConfig> {
    (
        prop::option::of(prop::sample::select(vec![Mode::Degree, Mode::Osculating, Mode::Galois, Mode::Family])),
        prop::option::of(1usize..6),
        prop::option::of(2usize..10),
        prop::option::of("[1-3](,[1-3]){0,2}(\\^[1-9])?"),
        prop::option::of(any::<u64>()),
        prop::option::of(0usize..9),
        prop::option::of(prop::sample::select(vec![Format::Json, Format::Csv])),
        prop::option::of(1u64..100_000),
    )
        .prop_map(|(mode, k, n, problem, seed, jobs, format, prime)| ExperimentConfig {
            mode,
            k,
            n,
            problem,
            seed,
            jobs,
            format,
            prime,
            ..Default::default()
        })
}

proptest! {
    #[test]
    fn config_round_trip(cfg in config_strategy()) {
        prop_assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn overlay_keeps_unset_fields(a in config_strategy(), b in config_strategy()) {
        let c = a.clone().overlay(b.clone());
        prop_assert_eq!(c.seed, b.seed.or(a.seed));
        prop_assert_eq!(c.k, b.k.or(a.k));
        prop_assert_eq!(c.problem, b.problem.or(a.problem));
    }
}
