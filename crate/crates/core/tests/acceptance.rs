//! One line per acceptance criterion, then a single assertion over all of them.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use koszul_core::complex::{koszul, KoszulData, Orientation};
use koszul_core::invariants::depth;
use koszul_core::report::{CheckReport, Verdict};
use koszul_core::theorems::{run_manifest, Catalog, Instance, Manifest, RunOptions};
use koszul_core::{FieldSpec, PrimeField};
use serde_json::Value;

struct Outcome {
    n: u8,
    ok: bool,
    detail: String,
}

fn run(ids: &[&str], jobs: usize) -> (Vec<CheckReport>, Duration) {
    let cat = Catalog::bundled();
    let man = Manifest::bundled();
    let entries: Vec<_> = man.checks.into_iter().filter(|e| ids.contains(&e.check.as_str())).collect();
    let t = Instant::now();
    let reps = run_manifest(FieldSpec::default(), &cat, &entries, &RunOptions { jobs, ..Default::default() }).unwrap();
    (reps, t.elapsed())
}

fn of<'a>(reps: &'a [CheckReport], check: &str) -> Vec<&'a CheckReport> {
    reps.iter().filter(|r| r.check == check).collect()
}

fn w<'a>(r: &'a CheckReport, key: &str) -> &'a Value {
    r.witnesses.get(key).unwrap_or(&Value::Null)
}

fn failures(reps: &[&CheckReport]) -> Vec<String> {
    reps.iter()
        .filter(|r| r.verdict != Verdict::Pass)
        .map(|r| format!("{} {} {}", r.check, r.instance, r.verdict))
        .collect()
}

fn thurs() -> Outcome {
    let t = Instant::now();
    let cat = Catalog::bundled();
    let inst = Instance::load(cat.get("thurs").unwrap(), PrimeField::new(32003).unwrap()).unwrap();
    let data = KoszulData::new(inst.ideal.clone(), inst.a().clone()).unwrap();
    let c = koszul(&data, Orientation::Chain);
    let d0 = depth(&c.homology(0).module).unwrap();
    let d1 = depth(&c.homology(1).module).unwrap();
    let el = t.elapsed();
    Outcome {
        n: 1,
        ok: d0 == 1 && d1 == 0 && el < Duration::from_secs(1),
        detail: format!("depth H_0 = {d0} (want 1), depth H_1 = {d1} (want 0), {el:?} (< 1 s)"),
    }
}

fn chi() -> Outcome {
    let (reps, el) = run(&["chi_vanishing"], 1);
    let cat = Catalog::bundled();
    let small_poly = |id: &str| {
        let doc = cat.get(id).unwrap();
        doc.ring.relations.is_empty() && doc.ring.vars.len() <= 3
    };
    let vanishing = reps
        .iter()
        .filter(|r| r.passed() && w(r, "case") == "vanishing" && w(r, "chi") == 0 && small_poly(&r.instance))
        .filter(|r| w(r, "m").as_u64() > w(r, "dim_M").as_u64())
        .count();
    let sop = reps
        .iter()
        .filter(|r| r.passed() && w(r, "case") == "system_of_parameters" && w(r, "chi").as_i64().is_some_and(|c| c > 0))
        .count();
    let bad = failures(&reps.iter().collect::<Vec<_>>());
    Outcome {
        n: 2,
        ok: vanishing >= 3 && sop >= 2 && bad.is_empty() && el < Duration::from_secs(10),
        detail: format!("{vanishing} vanishing (>= 3), {sop} with chi > 0 (>= 2), {el:?} (< 10 s) {bad:?}"),
    }
}

fn spectral() -> Outcome {
    let (reps, el) = run(&["e2_pages"], 1);
    let mut full = 0;
    let mut collapsed = BTreeSet::new();
    for r in &reps {
        let all = (1..=3).all(|k| w(r, &format!("ss{k}"))["pass"] == true);
        if r.passed() && all {
            full += 1;
        }
        for k in 1..=3 {
            let c = &w(r, &format!("ss{k}"))["collapse"];
            if c["applicable"] == true && c["holds"] == true {
                collapsed.insert(k);
            }
        }
    }
    let bad = failures(&reps.iter().collect::<Vec<_>>());
    Outcome {
        n: 3,
        ok: full >= 5 && collapsed.len() == 3 && bad.is_empty() && el < Duration::from_secs(60),
        detail: format!(
            "{full} triples with all three flavors (>= 5), collapse confirmed for {collapsed:?}, {el:?} (< 60 s) {bad:?}"
        ),
    }
}

fn annihilation_les(reps: &[CheckReport]) -> Outcome {
    let cat = Catalog::bundled();
    let ids: BTreeSet<&str> = cat.instances.iter().map(|i| i.id.as_str()).collect();
    let mut missing = Vec::new();
    let mut bad = Vec::new();
    let mut joints = 0;
    for check in ["annihilation", "les_exact"] {
        let rs = of(reps, check);
        let covered: BTreeSet<&str> = rs.iter().map(|r| r.instance.split(':').next().unwrap()).collect();
        missing.extend(ids.difference(&covered).map(|s| format!("{check} {s}")));
        bad.extend(failures(&rs));
        if check == "les_exact" {
            for r in &rs {
                for f in ["V", "U", "W"] {
                    for l in w(r, f).as_array().into_iter().flatten() {
                        joints += l["joints"].as_u64().unwrap_or(0);
                    }
                }
            }
        }
    }
    Outcome {
        n: 4,
        ok: missing.is_empty() && bad.is_empty() && joints > 0,
        detail: format!("every instance and prefix, {joints} joints exact; missing {missing:?}, failing {bad:?}"),
    }
}

fn perfect(reps: &[CheckReport]) -> Outcome {
    let rs = of(reps, "perfect_duality");
    let passing: Vec<_> = rs.iter().filter(|r| r.passed() && w(r, "edge_map") != &Value::Null).collect();
    let ci = passing.iter().filter(|r| w(r, "shifted_copy_of_A_mod_I") == true).count();
    let bad = failures(&rs);
    Outcome {
        n: 5,
        ok: passing.len() >= 2 && ci >= 1 && bad.is_empty(),
        detail: format!("{} with equal Hilbert functions and edge isomorphism (>= 2), {ci} with both sides A/I up to twist {bad:?}", passing.len()),
    }
}

fn depth_suite(reps: &[CheckReport]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for check in ["depth_bounds", "cmd_bound", "pdim_depth", "two_add"] {
        let rs = of(reps, check);
        let pass = rs.iter().filter(|r| r.passed()).count();
        let bad = failures(&rs);
        ok &= pass >= 2 && bad.is_empty();
        parts.push(format!("{check} {pass}/{}", rs.len()));
    }
    Outcome {
        n: 6,
        ok,
        detail: parts.join(", "),
    }
}

fn bass(reps: &[CheckReport]) -> Outcome {
    let rs = of(reps, "bass_formula");
    let witnessed = rs.iter().filter(|r| r.passed() && w(r, "injdim_infinite_witness") != &Value::Null).count();
    let gul = of(reps, "gul_evidence");
    let capped = gul.iter().all(|r| matches!(r.verdict, Verdict::Evidence | Verdict::Inconclusive));
    let bad = failures(&rs);
    Outcome {
        n: 7,
        ok: witnessed >= 2 && bad.is_empty() && capped,
        detail: format!("{witnessed} instances with witnessed infinite injdim (>= 2), gul verdicts capped: {capped} {bad:?}"),
    }
}

fn oracle() -> Outcome {
    let cat = Catalog::bundled();
    let mut instances = 0;
    let mut tables = 0;
    let mut panicked = Vec::new();
    for doc in &cat.instances {
        match std::panic::catch_unwind(|| common::compare_instance(&doc.id)) {
            Ok(0) => {}
            Ok(n) => {
                instances += 1;
                tables += n;
            }
            Err(_) => panicked.push(doc.id.clone()),
        }
    }
    Outcome {
        n: 8,
        ok: panicked.is_empty() && instances > 0,
        detail: format!(
            "{tables} dimension tables equal on {instances} instances with window dimension <= {}; disagreements on {panicked:?}",
            common::BUDGET
        ),
    }
}

fn determinism(a: &[CheckReport], b: &[CheckReport]) -> Outcome {
    let strip = |rs: &[CheckReport]| -> String {
        rs.iter().map(|r| serde_json::to_string(&r.without_timing()).unwrap()).collect::<Vec<_>>().join("\n")
    };
    let same = strip(a) == strip(b);
    Outcome {
        n: 9,
        ok: same && a.len() == b.len(),
        detail: format!("{} reports, identical apart from timing: {same}", a.len()),
    }
}

#[test]
fn acceptance() {
    let mut out = vec![thurs(), chi(), spectral()];
    let all: Vec<&str> = koszul_core::theorems::CHECK_IDS.to_vec();
    let (first, _) = run(&all, 1);
    out.push(annihilation_les(&first));
    out.push(perfect(&first));
    out.push(depth_suite(&first));
    out.push(bass(&first));
    out.push(oracle());
    let (second, _) = run(&all, 2);
    out.push(determinism(&first, &second));
    for o in &out {
        println!("criterion {}: {} {}", o.n, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<u8> = out.iter().filter(|o| !o.ok).map(|o| o.n).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
