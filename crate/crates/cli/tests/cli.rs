use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use koszul_core::io::{from_json, ModuleDoc};
use koszul_core::report::CheckReport;
use serde_json::Value;

const THURS: &str = r#"{
  "params": {"field": "Q"},
  "rings": [{"name": "A", "vars": [["x", 1], ["y", 1]], "relations": ["x*y", "y^2"]}],
  "modules": [{"name": "R", "ring": "A", "kind": "free", "gens": [0]},
              {"name": "k", "ring": "A", "kind": "residue_field"}],
  "ideals": [{"name": "I", "ring": "A", "gens": ["y"]}],
  "koszul": [{"name": "K1", "module": "R", "ideal": "I"}]
}"#;

const CHI: &str = r#"{
  "params": {"field": "Q"},
  "rings": [{"name": "S", "vars": [["x", 1], ["y", 1], ["z", 1]]}],
  "modules": [{"name": "M", "ring": "S", "kind": "cyclic", "ideal": ["x", "y"]},
              {"name": "S1", "ring": "S", "kind": "free", "gens": [0]}],
  "koszul": [{"name": "K2", "module": "M", "elements": ["x", "z"]},
             {"name": "K3", "module": "S1", "elements": ["x"]}]
}"#;

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszul-lab"))
        .args(args)
        .env("KOSZUL_LAB_OUT", dir)
        .output()
        .unwrap()
}

fn session(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn homology_row_for_thurs() {
    let d = tempfile::tempdir().unwrap();
    let s = session(d.path(), "thurs.json", THURS);
    let o = lab(d.path(), &["compute", "homology", "--session", &s, "--koszul", "K1", "--index", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(&row[..5], &["H_1", "1", "1", "-", "0"]);
    let tsv = fs::read_to_string(d.path().join("homology_K1_1.tsv")).unwrap();
    assert_eq!(tsv, out);
    let json: Value = serde_json::from_str(&fs::read_to_string(d.path().join("homology_K1_1.json")).unwrap()).unwrap();
    let doc: ModuleDoc = serde_json::from_value(json["rows"][0]["presentation"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&doc).unwrap(), json["rows"][0]["presentation"]);
    let left: Vec<_> = fs::read_dir(d.path()).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp")).collect();
    assert!(left.is_empty());
}

#[test]
fn chi_of_a_line() {
    let d = tempfile::tempdir().unwrap();
    let s = session(d.path(), "chi.json", CHI);
    let o = lab(d.path(), &["compute", "chi", "--session", &s, "--koszul", "K2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0\n(1,1,0)\n");
    let back: Value = serde_json::from_str(&fs::read_to_string(d.path().join("chi_K2.json")).unwrap()).unwrap();
    assert_eq!(back["lengths"], serde_json::json!([1, 1, 0]));
}

#[test]
fn other_targets_run() {
    let d = tempfile::tempdir().unwrap();
    let s = session(d.path(), "thurs.json", THURS);
    for args in [
        vec!["ext", "--module", "k", "--other", "R", "--cutoff", "3"],
        vec!["tor", "--module", "k", "--other", "k", "--cutoff", "3"],
        vec!["V", "--koszul", "K1", "--other", "k"],
        vec!["U", "--koszul", "K1", "--other", "k", "--index", "1"],
        vec!["W", "--koszul", "K1", "--other", "k", "--window", "-1:4"],
    ] {
        let mut full = vec!["compute", args[0], "--session", &s];
        full.extend(&args[1..]);
        let o = lab(d.path(), &full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).lines().count() > 1, "{args:?}");
    }
    let o = lab(d.path(), &["compute", "invariants", "--session", &s, "--module", "R", "--ideals", "I"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rec: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rec["depth"], 0);
    assert_eq!(rec["krull_dim"], 1);
    assert_eq!(rec["cmd"], 1);
    let mut n = 0;
    for e in fs::read_dir(d.path()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "json") && p.file_name().unwrap() != "thurs.json" {
            let text = fs::read_to_string(&p).unwrap();
            let v: Value = serde_json::from_str(&text).unwrap();
            for r in v["rows"].as_array().into_iter().flatten() {
                let doc: ModuleDoc = serde_json::from_value(r["presentation"].clone()).unwrap();
                assert_eq!(serde_json::to_value(&doc).unwrap(), r["presentation"], "{}", p.display());
            }
            n += 1;
        }
    }
    assert_eq!(n, 6);
}

#[test]
fn depth_bounds_roll_up() {
    let d = tempfile::tempdir().unwrap();
    let o = lab(d.path(), &["check", "--id", "depth_bounds", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let roll = stdout(&o);
    assert!(roll.lines().any(|l| l.starts_with("depth_bounds\tthurs\tpass")), "{roll}");
    let text = fs::read_to_string(d.path().join("reports/depth_bounds__thurs.json")).unwrap();
    let rep: CheckReport = from_json(&text).unwrap();
    assert_eq!(rep.witnesses["counterexample_confirmed"], Value::Bool(true));
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap(), text);
    assert_eq!(fs::read_to_string(d.path().join("rollup.tsv")).unwrap(), roll);
}

#[test]
fn strict_fails_on_evidence() {
    let d = tempfile::tempdir().unwrap();
    let o = lab(d.path(), &["check", "--id", "gul_evidence"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = lab(d.path(), &["check", "--id", "gul_evidence", "--strict"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn full_roll_up_is_stable() {
    let d = tempfile::tempdir().unwrap();
    let a = lab(d.path(), &["check", "--all", "--field", "Fp:32003", "--jobs", "2"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let first: Vec<String> = stdout(&a).lines().map(|l| l.rsplit_once('\t').unwrap().0.to_string()).collect();
    assert!(first.len() > 100);
    let reports = fs::read_dir(d.path().join("reports")).unwrap().count();
    assert_eq!(reports, first.len() - 1);
}

#[test]
fn negative_controls() {
    let d = tempfile::tempdir().unwrap();
    let good = session(d.path(), "thurs.json", THURS);
    let broken = session(d.path(), "broken.json", "{\n  \"rings\": [,]\n}");
    let bad_poly = session(d.path(), "bad_poly.json", &THURS.replace("\"y^2\"", "\"y^^2\""));
    let chi = session(d.path(), "chi.json", CHI);
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["compute", "homology", "--session", &broken, "--koszul", "K1"], 3, "line 2, column"),
        (vec!["compute", "homology", "--session", &bad_poly, "--koszul", "K1"], 3, "parse error"),
        (vec!["compute", "homology", "--session", &good, "--koszul", "K9"], 3, "known: K1"),
        (vec!["compute", "ext", "--session", &good, "--module", "R", "--other", "Q"], 3, "known: R, k"),
        (vec!["compute", "homology", "--session", &good], 3, "--koszul"),
        (vec!["compute", "bogus", "--session", &good], 3, "unknown target"),
        (vec!["compute", "homology", "--session", "/nonexistent.json", "--koszul", "K1"], 3, "reading"),
        (vec!["compute", "homology", "--session", &good, "--koszul", "K1", "--window", "3"], 3, "bad window"),
        (vec!["compute", "homology", "--session", &good, "--koszul", "K1", "--field", "Fp:12"], 3, "prime"),
        (vec!["check", "--id", "nope"], 3, "unknown check"),
        (vec!["check"], 3, "--all"),
        (vec!["check", "--id", "chi_vanishing", "--instance", "nowhere"], 3, "unknown instance"),
        (vec!["frobnicate"], 3, ""),
        (vec!["compute", "chi", "--session", &chi, "--koszul", "K3"], 2, "ideal of definition"),
        (vec!["compute", "ext", "--session", &good, "--module", "k", "--other", "R", "--index", "3", "--cutoff", "1"], 0, ""),
    ];
    for (args, code, msg) in cases {
        let o = lab(d.path(), &args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(msg), "{args:?}: {}", stderr(&o));
    }
}
