use khcore::io::*;
use khcore::kh::Deformation;
use khcore::link::{negative_five_two, to_pd};

fn five_two() -> KnotEntry {
    KnotEntry { writhe: Some(-5), negative: Some(true), ..KnotEntry::pd("5_2", &to_pd(&negative_five_two())) }
}

fn small_manifest() -> RunManifest {
    RunManifest::new(
        vec![KnotEntry::braid("unknot", "1:"), five_two(), KnotEntry::braid("Hopf", "2: 1 1")],
        vec![Task::Homology, Task::SInvariant, Task::Triangle { crossing: None }],
    )
}

#[test]
fn manifest_round_trip_and_validation() {
    let m = small_manifest();
    assert_eq!(RunManifest::from_json(&m.to_json()).unwrap(), m);
    assert!(m.validate().is_empty());
    let text = r#"{"knots": [{"name": "t", "braid": "2: -1 -1 -1", "writhe": -3, "negative": true}], "tasks": [{"task": "s-invariant"}]}"#;
    let m = RunManifest::from_json(text).unwrap();
    assert_eq!((m.field, m.deformation, m.budget_crossings), (3, Deformation::Lee, 60));
    let mut bad = m.clone();
    bad.knots[0].writhe = Some(3);
    bad.knots.push(KnotEntry { negative: Some(true), ..KnotEntry::braid("pos", "2: 1 1 1") });
    bad.knots.push(KnotEntry { pd: Some("X[1,2,2,1]".into()), ..KnotEntry::braid("both", "1:") });
    assert_eq!(bad.validate().len(), 3);
    bad.field = 4;
    assert_eq!(bad.validate().len(), 4);
}

#[test]
fn known_records() {
    let out = run(&small_manifest(), &Cache::none()).unwrap();
    let l = &out.ledger;
    assert_eq!(l.records.len(), 9);
    assert_eq!(l.exit_code(), 0);
    let s: Vec<_> = l.records.iter().filter_map(|r| match r.result {
        Some(TaskResult::S { s }) => Some((r.knot.as_str(), s)),
        _ => None,
    }).collect();
    assert_eq!(s, [("unknot", 0), ("5_2", -2), ("Hopf", 1)]);
    assert_eq!(Ledger::from_json(&l.to_json()).unwrap(), *l);
    assert_eq!(l.to_text().lines().count(), 9);
}

#[test]
fn rerun_is_served_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::at(dir.path()).unwrap();
    let mut m = small_manifest();
    m.deformation = Deformation::Khovanov;
    let first = run(&m, &cache).unwrap();
    assert_eq!((first.computed, first.cached), (9, 0));
    let second = run(&m, &cache).unwrap();
    assert_eq!((second.computed, second.cached), (0, 9));
    assert_eq!(second.ledger, first.ledger);
    let fresh = run(&m, &Cache::none()).unwrap();
    for (a, b) in fresh.ledger.records.iter().zip(&second.ledger.records) {
        assert!(a.same_result(b), "{a:?} vs {b:?}");
    }
    // other parameters are other keys
    m.field = 5;
    assert_eq!(run(&m, &cache).unwrap().cached, 0);
}

#[test]
fn exit_codes() {
    let mut m = RunManifest::new(vec![five_two()], vec![Task::SInvariant, Task::VerifySinv { n: 1 }]);
    let out = run(&m, &Cache::none()).unwrap();
    assert!(matches!(out.ledger.records[1].status, Status::Skipped(_)));
    assert_eq!(out.ledger.exit_code(), 2);
    m.knots[0].writhe = Some(5);
    let out = run(&m, &Cache::none()).unwrap();
    assert!(out.ledger.records.iter().all(|r| matches!(r.status, Status::Failed(_))));
    assert_eq!(out.ledger.exit_code(), 1);
    m.knots = vec![KnotEntry::braid("unknot", "1:")];
    m.tasks = vec![Task::Induct { max_m: 1 }, Task::VerifySinv { n: 1 }];
    let out = run(&m, &Cache::none()).unwrap();
    assert_eq!(out.ledger.exit_code(), 0, "{}", out.ledger.to_text());
}
