//! Individual checks on catalog instances, over both fields.

use koszul_core::report::Verdict;
use koszul_core::theorems::{run_check, Catalog, CheckParams, Instance, Manifest};
use koszul_core::{Field, PrimeField, Rationals};
use serde_json::json;

fn check<F: Field>(field: F, check: &str, id: &str, params: CheckParams) -> koszul_core::report::CheckReport {
    let cat = Catalog::bundled();
    let inst = Instance::load(cat.get(id).unwrap(), field).unwrap();
    run_check(check, id, &inst, &params)
}

#[test]
fn chi_on_a_line_through_a_plane() {
    let r = check(Rationals, "chi_vanishing", "chi_line", CheckParams::default());
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.witnesses["chi"], json!(0));
    assert_eq!(r.witnesses["lengths"], json!([1, 1, 0]));
    assert_eq!(r.witnesses["case"], json!("vanishing"));
}

#[test]
fn thurs_is_a_counterexample_to_depth_bounds() {
    let p = CheckParams {
        expect: Some("counterexample".into()),
        ..Default::default()
    };
    let r = check(Rationals, "depth_bounds", "thurs", p);
    assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.notes);
    assert_eq!(r.witnesses["counterexample_confirmed"], json!(true));
}

#[test]
fn perfect_duality_on_a_line() {
    let r = check(Rationals, "perfect_duality", "line_x", CheckParams::default());
    assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.witnesses.get("violation"));
    assert_eq!(r.witnesses["ext_g_H_r"], r.witnesses["H_g_plus_r"]);
    assert_eq!(r.witnesses["shifted_copy_of_A_mod_I"], json!(true));
}

#[test]
fn gul_never_passes_outright() {
    let man = Manifest::bundled();
    for e in man.select(Some("gul_evidence")).unwrap() {
        let r = check(PrimeField::new(32003).unwrap(), &e.check, &e.instance, e.params.clone());
        assert!(matches!(r.verdict, Verdict::Evidence | Verdict::Inconclusive), "{}: {}", e.instance, r.verdict);
    }
}

#[test]
fn missing_hypothesis_is_inconclusive() {
    // thurs is not Cohen–Macaulay
    let r = check(Rationals, "bass_formula", "thurs", CheckParams::default());
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

#[test]
fn unknown_module_is_an_error() {
    let p = CheckParams {
        module: Some("nope".into()),
        ..Default::default()
    };
    let r = check(Rationals, "chi_vanishing", "chi_line", p);
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn fields_agree_on_small_checks() {
    for (c, id) in [("chi_vanishing", "chi_plane"), ("hypersurface_h1", "node"), ("depth_bounds", "axes")] {
        let q = check(Rationals, c, id, CheckParams::default()).without_timing();
        let p = check(PrimeField::new(32003).unwrap(), c, id, CheckParams::default()).without_timing();
        assert_eq!(q, p, "{c} on {id}");
    }
}
