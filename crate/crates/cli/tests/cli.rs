use std::process::Command;

fn khtool(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_khtool")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn homology_of_the_trefoil() {
    let (code, out) = khtool(&["homology", "2: 1 1 1"]);
    assert_eq!(code, 0);
    assert!(out.contains("t^0q^1 + t^0q^3 + t^2q^5 + t^3q^9"), "{out}");
}

#[test]
fn s_invariants() {
    for (k, s) in [("unknot", "s = 0"), ("5_2", "s = -2"), ("3_1", "s = -2")] {
        let (code, out) = khtool(&["s-invariant", k, "--field", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains(s), "{k}: {out}");
    }
    let (code, out) = khtool(&["s-invariant", "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]", "--deformation", "bar-natan"]);
    assert_eq!(code, 0);
    assert!(out.contains("s = "), "{out}");
}

#[test]
fn json_ledger_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["triangle", "3: 1 -2 1 -2", "--emit", "json", "--cache", cache];
    let (code, first) = khtool(&args);
    assert_eq!(code, 0);
    let (_, second) = khtool(&args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["records"][0]["result"]["triangles"]["triangles"].as_array().unwrap().len(), 4);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() == 1);
}

#[test]
fn exit_codes() {
    assert_eq!(khtool(&["verify-sinv", "unknot", "--n", "1"]).0, 0);
    assert_eq!(khtool(&["verify-sinv", "5_2", "--n", "1"]).0, 2);
    assert_eq!(khtool(&["induct", "2: 1 1 1"]).0, 1);
    assert_eq!(khtool(&["homology", "not a knot"]).0, 1);
}

#[test]
fn manifest_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"knots": [{"name": "U", "braid": "1:", "writhe": 0, "negative": true},
                      {"name": "3_1", "braid": "2: -1 -1 -1", "writhe": -3}],
            "field": 5, "tasks": [{"task": "s-invariant"}, {"task": "induct", "max_m": 0}]}"#,
    )
    .unwrap();
    let (code, out) = khtool(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.contains("\tok\t")), "{out}");
}
