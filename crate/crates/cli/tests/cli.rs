use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const KP: &str = "a,b|b,baBAA";

fn foldcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foldcx"))
        .args(args)
        .env_remove("FOLDCX_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn family(dir: &Path, spec: &str) -> PathBuf {
    let p = dir.join(format!("{}.json", spec.replace(':', "_")));
    let o = foldcx(&["family", spec, "-o", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

/// Two `a`-loops at one vertex; folding merges them.
const DOUBLE_LOOP: &str = r#"{"presentation":"a,b|b,baBAA","vertices":["v"],
  "edges":[{"id":"x","tail":"v","head":"v","label":"a"},{"id":"y","tail":"v","head":"v","label":"a"}],
  "faces":[]}"#;

#[test]
fn documented_examples() {
    let dir = TempDir::new().unwrap();
    let kp = dir.path().join("kp.json");
    assert_eq!(code(&foldcx(&["build", KP, "-o", kp.to_str().unwrap()])), 0);
    assert_eq!(
        stdout(&foldcx(&["kappa", kp.to_str().unwrap()])).trim(),
        "1/2"
    );
    let c6 = family(dir.path(), "C:6");
    assert_eq!(
        stdout(&foldcx(&["classify", c6.to_str().unwrap()])).trim(),
        "C:3"
    );

    let o = foldcx(&["verify-theorem", "--max-vertices", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "pass");
    let closed: Vec<&str> = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["input"].as_str().unwrap().starts_with("both-types"))
        .map(|r| r["outcome"].as_str().unwrap())
        .collect();
    assert_eq!(closed, ["C:1"]);
    assert_eq!(report["parameters"]["seed"], 0x5eed);
}

#[test]
fn build_round_trips_through_iso() {
    let dir = TempDir::new().unwrap();
    let kp = dir.path().join("kp.json");
    foldcx(&["build", KP, "-o", kp.to_str().unwrap()]);
    let c1 = family(dir.path(), "C:1");
    let o = foldcx(&["iso", kp.to_str().unwrap(), c1.to_str().unwrap()]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "isomorphic"));
    // Re-serializing a parsed file is a fixed point.
    let again = foldcx(&["fold", kp.to_str().unwrap()]);
    assert_eq!(stdout(&again), fs::read_to_string(&kp).unwrap());
}

#[test]
fn moves_chain_through_files() {
    let dir = TempDir::new().unwrap();
    let d1 = family(dir.path(), "D:1");
    let free = stdout(&foldcx(&["free-faces", d1.to_str().unwrap()]));
    let free: Vec<&str> = free.lines().collect();
    assert!(!free.is_empty());
    let d2 = dir.path().join("d2.json");
    let o = foldcx(&[
        "couple",
        d1.to_str().unwrap(),
        "--type",
        "1",
        "--pos",
        "2",
        "--edge",
        "b1",
        "-o",
        d2.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&foldcx(&["classify", d2.to_str().unwrap()])).trim(),
        "D:2"
    );
    assert_eq!(stdout(&foldcx(&["chi", d2.to_str().unwrap()])).trim(), "1");

    let trace = dir.path().join("trace.jsonl");
    let bad = write(dir.path(), "bad.json", DOUBLE_LOOP);
    let o = foldcx(&[
        "fold",
        bad.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        fs::read_to_string(&trace).unwrap().lines().count(),
        1,
        "the two loops merge"
    );

    let dot = stdout(&foldcx(&["export-dot", d1.to_str().unwrap()]));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn homology_and_certify() {
    let dir = TempDir::new().unwrap();
    let c3 = family(dir.path(), "Ct:3");
    let o = foldcx(&["homology", c3.to_str().unwrap(), "--json"]);
    let h: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (
            h["betti_0"].as_u64(),
            h["betti_1"].as_u64(),
            h["betti_2"].as_u64()
        ),
        (Some(1), Some(0), Some(0))
    );
    let o = foldcx(&["certify", c3.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn enumerate_writes_classes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("classes");
    let o = foldcx(&[
        "enumerate",
        "--max-vertices",
        "3",
        "--connected",
        "--closed",
        "--types",
        "0,1",
        "--dir",
        out.to_str().unwrap(),
        "--jobs",
        "2",
        "--json",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["class"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["C:1", "C:3"]);
    assert_eq!(fs::read_dir(&out).unwrap().count(), 2);
}

#[test]
fn budget_env_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_foldcx"))
        .args(["verify-theorem", "--max-vertices", "2"])
        .env("FOLDCX_BUDGET", "nodes=3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = Command::new(env!("CARGO_BIN_EXE_foldcx"))
        .args(["chi", "-"])
        .env("FOLDCX_BUDGET", "nodes=lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

/// Exit codes over valid, invalid and negative inputs.
#[test]
fn exit_code_corpus() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let c3 = s(&family(d, "C:3"));
    let c5 = s(&family(d, "C:5"));
    let d1 = s(&family(d, "D:1"));
    let double = s(&write(d, "double.json", DOUBLE_LOOP));
    let garbage = s(&write(d, "garbage.json", "{ not json"));
    let unknown_field = s(&write(
        d,
        "extra.json",
        r#"{"presentation":"a|a","vertices":[],"edges":[],"faces":[],"x":1}"#,
    ));
    let dangling = s(&write(
        d,
        "dangling.json",
        r#"{"presentation":"a|a","vertices":["v"],"edges":[{"id":"e","tail":"v","head":"w","label":"a"}],"faces":[]}"#,
    ));
    let missing = s(&d.join("missing.json"));
    let two_points = s(&write(
        d,
        "points.json",
        r#"{"presentation":"a,b|b,baBAA","vertices":["p","q"],"edges":[],"faces":[]}"#,
    ));
    let other_target = s(&write(
        d,
        "cyclic.json",
        r#"{"presentation":"a|a","vertices":["v"],"edges":[{"id":"e","tail":"v","head":"v","label":"a"}],
            "faces":[{"id":"f","type":0,"boundary":["+e"]}]}"#,
    ));

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["build", "a,b|b,baBAA"], 0),
        (vec!["build", "a,b|b,bxB"], 2),
        (vec!["family", "Dt:0"], 0),
        (vec!["family", "C:0"], 2),
        (vec!["family", "E:3"], 2),
        (vec!["chi", &c3], 0),
        (vec!["chi", &garbage], 2),
        (vec!["chi", &unknown_field], 2),
        (vec!["chi", &dangling], 2),
        (vec!["chi", &missing], 2),
        (vec!["kappa", &c5], 0),
        (vec!["check-immersion", &c3], 0),
        (vec!["check-immersion", &double], 1),
        (vec!["free-faces", &d1], 0),
        (vec!["collapse", &d1, "--edge", "b1"], 0),
        (vec!["collapse", &c3, "--edge", "b0"], 2),
        (vec!["collapse", &d1, "--edge", "nope"], 2),
        (vec!["fold", &double], 0),
        (
            vec!["couple", &d1, "--type", "1", "--pos", "0", "--edge", "b1"],
            0,
        ),
        (
            vec!["couple", &d1, "--type", "1", "--pos", "1", "--edge", "b1"],
            2,
        ),
        (
            vec!["couple", &d1, "--type", "7", "--pos", "0", "--edge", "b1"],
            2,
        ),
        (vec!["identify-vertices", &c5, "--u", "0", "--v", "1"], 0),
        (vec!["identify-vertices", &c5, "--u", "0", "--v", "0"], 2),
        (vec!["identify-edges", &d1, "--e1", "b0", "--e2", "b1"], 0),
        (vec!["identify-edges", &d1, "--e1", "a1", "--e2", "b1"], 2),
        (vec!["iso", &c3, &c3], 0),
        (vec!["iso", &c3, &c5], 1),
        (vec!["classify", &d1], 0),
        (vec!["classify", &double], 0),
        (vec!["classify", &other_target], 2),
        (vec!["homology", &c5], 0),
        (vec!["certify", &c5], 0),
        (vec!["certify", &double], 1),
        (vec!["certify", &two_points], 2),
        (vec!["enumerate", "--max-vertices", "2"], 0),
        (vec!["enumerate", "--max-vertices", "0"], 2),
        (vec!["verify-lemma", "2.2", "--max-i", "5"], 0),
        (vec!["verify-lemma", "edge", "--max-i", "4"], 0),
        (vec!["verify-lemma", "2.5", "--max-i", "4"], 0),
        (vec!["verify-lemma", "2.9", "--max-i", "4"], 2),
        (vec!["verify-theorem", "--max-vertices", "2"], 0),
        (vec!["export-dot", &d1], 0),
        (vec!["no-such-command"], 2),
        (vec![], 2),
        (vec!["--jobs", "0", "chi", &c3], 2),
    ];
    for (args, want) in cases {
        let o = foldcx(&args);
        assert_eq!(
            code(&o),
            want,
            "foldcx {args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn certify_rejects_noncontractible() {
    // A lone type-2 face on one vertex: χ = 0.
    let dir = TempDir::new().unwrap();
    let torus_like = write(
        dir.path(),
        "t.json",
        r#"{"presentation":"a,b|b,baBAA","vertices":["v"],
            "edges":[{"id":"a0","tail":"v","head":"v","label":"a"},{"id":"b0","tail":"v","head":"v","label":"b"}],
            "faces":[{"id":"f","type":1,"boundary":["+b0","+a0","-b0","-a0","-a0"]}]}"#,
    );
    let o = foldcx(&["certify", torus_like.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).trim(), "not-contractible");
}
