//! One function per check id. Each re-derives its hypotheses, records the
//! numbers it used and reports the first violated inequality.

use std::sync::Arc;

use serde_json::{json, Value};

use super::tags::{embedding_dim, is_cm, is_perfect};
use super::{CheckParams, Instance, Tag};
use crate::complex::{euler_characteristic, koszul, KoszulData, Orientation};
use crate::double::{default_r_max, ss_pages, Filtration};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::HilbertData;
use crate::homalg::{ext, ext_from, hom, tor};
use crate::hyper::{annihilation, e2_compare, hyper_modules, les_verify_prefixes, u_double, Flavor};
use crate::invariants::{bass_numbers, depth, grade, minimal_ideal_generators, Grade};
use crate::module::FpModule;
use crate::report::{CheckReport, Verdict};
use crate::resolution::minimal_free_resolution;
use crate::ring::Poly;

pub(super) fn dispatch<F: Field>(check: &str, inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    match check {
        "chi_vanishing" => chi_vanishing(inst, p, r),
        "hypersurface_h1" => hypersurface_h1(inst, p, r),
        "perfect_duality" => perfect_duality(inst, p, r),
        "all_but_one" => all_but_one(inst, p, r),
        "growth" => growth(inst, p, r),
        "depth_bounds" => depth_bounds(inst, p, r),
        "cmd_bound" => cmd_bound(inst, p, r),
        "pdim_depth" => pdim_depth(inst, p, r),
        "hom_mcm" => hom_mcm(inst, p, r),
        "gor_cm_duality" => gor_cm_duality(inst, p, r),
        "two_add" => two_add(inst, p, r),
        "bass_formula" => bass_formula(inst, p, r),
        "gul_evidence" => gul_evidence(inst, p, r),
        "e2_pages" => e2_pages(inst, p, r),
        "les_exact" => les_exact(inst, p, r),
        "annihilation" => annihilation_check(inst, p, r),
        _ => Err(Error::InvalidInput(format!("unknown check `{check}`"))),
    }
}

// ---------------------------------------------------------------------------
// shared computations

/// `H_0 .. H_m` of the Koszul chain complex.
pub(crate) fn koszul_homology<F: Field>(u: &[Poly<F>], m: &FpModule<F>) -> Result<Vec<FpModule<F>>> {
    let k = koszul(&KoszulData::new(u.to_vec(), m.clone())?, Orientation::Chain);
    Ok((0..=u.len() as i32).map(|i| k.homology(i).module).collect())
}

/// `H^0 .. H^m` of the Koszul cochain complex.
pub(crate) fn koszul_cohomology<F: Field>(u: &[Poly<F>], m: &FpModule<F>) -> Result<Vec<FpModule<F>>> {
    let k = koszul(&KoszulData::new(u.to_vec(), m.clone())?, Orientation::Cochain);
    Ok((0..=u.len() as i32).map(|i| k.homology(i).module).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pd {
    Finite(usize),
    Infinite,
}

/// Projective dimension, decided: a finite one never exceeds `depth A`.
pub(crate) fn pd_decided<F: Field>(m: &FpModule<F>, depth_a: usize) -> Pd {
    let res = minimal_free_resolution(m, depth_a);
    if res.terminated {
        Pd::Finite(res.length())
    } else {
        Pd::Infinite
    }
}

fn pd_json(p: Pd) -> Value {
    match p {
        Pd::Finite(n) => json!(n),
        Pd::Infinite => json!("inf"),
    }
}

fn depth_opt<F: Field>(m: &FpModule<F>) -> Result<Option<usize>> {
    if m.is_zero() {
        Ok(None)
    } else {
        depth(m).map(Some)
    }
}

fn finite_grade(g: Grade, what: &str) -> Result<usize> {
    match g {
        Grade::Finite(g) => Ok(g),
        Grade::Infinite => Err(Error::InvalidInput(format!("{what}: the ideal does not act nilpotently (IM = M)"))),
    }
}

fn module<'a, F: Field>(inst: &'a Instance<F>, p: &CheckParams, default: &'a str) -> Result<(&'a str, &'a FpModule<F>)> {
    let name = p.module.as_deref().unwrap_or(default);
    let (k, v) = match inst.modules.get_key_value(name) {
        Some(kv) => kv,
        None => return Err(inst.module(name).err().unwrap()),
    };
    Ok((k.as_str(), v))
}

fn other<'a, F: Field>(inst: &'a Instance<F>, p: &CheckParams, default: &'a str) -> Result<(&'a str, &'a FpModule<F>)> {
    let q = CheckParams {
        module: p.other.clone(),
        ..CheckParams::default()
    };
    module(inst, &q, default)
}

fn cutoff<F: Field>(inst: &Instance<F>, p: &CheckParams) -> usize {
    p.cutoff.unwrap_or(inst.ring.nvars() + 2)
}

fn window<F: Field>(inst: &Instance<F>, p: &CheckParams) -> (i32, i32) {
    p.window.unwrap_or_else(|| {
        let s: i32 = inst.ideal.iter().filter_map(|q| inst.ring.degree(q)).sum();
        (-s - 2, inst.ring.max_relation_degree().max(1) + s + 4)
    })
}

fn series(h: &HilbertData, w: (i32, i32)) -> Value {
    json!({ "numerator": h.numerator, "values": h.values(w.0, w.1) })
}

fn need(r: &mut CheckReport, inst: &Instance<impl Field>, tags: &[Tag]) -> bool {
    for &t in tags {
        if let Err(why) = inst.require(t) {
            r.inconclusive(why);
            return false;
        }
    }
    true
}

fn m_gens<F: Field>(inst: &Instance<F>) -> Vec<Poly<F>> {
    minimal_ideal_generators(inst.a(), &inst.ring.vars())
}

/// The edge map `Ext^g(H_r(u), N) -> H^{g+r}(u, N)` of the spectral sequence
/// `Ext^b(H_a(u), N) => U^{a+b}(u, A, N) = H^{a+b}(u, N)`: it is an
/// isomorphism in degree `t` when the cell survives unchanged and is the only
/// survivor on its antidiagonal.
fn edge_map<F: Field>(u: &[Poly<F>], a: &FpModule<F>, n: &FpModule<F>, rr: usize, g: usize, w: (i32, i32)) -> Result<(bool, Value)> {
    let dc = u_double(u, a, n, g + rr + 2)?;
    let tot = (g + rr) as i32;
    if !dc.is_valid_total(tot) {
        return Err(Error::CutoffExceeded {
            cutoff: g + rr + 2,
            needed: g + rr + 1,
        });
    }
    let ss = ss_pages(&dc, Filtration::ByRow, default_r_max(&dc).max(2), w);
    let cell = (rr as i32, g as i32);
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for t in w.0..=w.1 {
        let k = (t - w.0) as usize;
        let e2 = ss.dim(2, cell, t).unwrap_or(0);
        let einf = ss.e_inf_dim(cell, t).unwrap_or(0);
        let h = ss.homology.get(&tot).map_or(0, |v| v[k]);
        if e2 != einf || einf != h {
            bad.push(t);
        }
        rows.push([t as i64, e2 as i64, einf as i64, h as i64]);
    }
    let ok = bad.is_empty() && ss.convergence_ok;
    Ok((ok, json!({ "cell": cell, "total": tot, "rows_t_e2_einf_h": rows, "bad_degrees": bad, "convergence_ok": ss.convergence_ok })))
}

// ---------------------------------------------------------------------------
// checks

fn chi_vanishing<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Regular]) {
        return Ok(());
    }
    let (mname, m) = module(inst, p, if inst.modules.contains_key("M") { "M" } else { "A" })?;
    let u = &inst.ideal;
    let d = inst.a().dim().unwrap_or(0);
    let q = FpModule::cyclic(&inst.ring, u)?;
    let dim_q = q.dim().unwrap_or(0);
    let dim_m = m.dim().unwrap_or(0);
    r.witness("module", mname);
    r.witness("dim_A", d);
    r.witness("dim_M", dim_m);
    r.witness("dim_A_mod_I", dim_q);
    r.witness("m", u.len());
    let data = KoszulData::new(u.clone(), m.clone())?;
    let (chi, lengths) = match euler_characteristic(&data) {
        Ok(x) => x,
        Err(Error::NotIdealOfDefinition { .. }) => {
            r.inconclusive("M ⊗ A/I has infinite length");
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    r.witness("chi", chi);
    r.witness("lengths", &lengths);
    // Serre's intersection multiplicity, recorded alongside
    let cut = cutoff(inst, p).max(d + 1);
    let mut serre = 0i64;
    for i in 0..=d {
        let l = tor(m, &q, i, cut)?.module.length().unwrap_or(0) as i64;
        serre += if i % 2 == 0 { l } else { -l };
    }
    r.witness("tor_alternating_sum", serre);
    if dim_m + dim_q < d {
        r.witness("case", "vanishing");
        if chi != 0 {
            r.fail("chi = 0", json!({ "chi": chi }));
        }
        if u.len() <= dim_m {
            r.fail("m > dim M", json!({ "m": u.len(), "dim_M": dim_m }));
        }
    } else if u.len() == dim_m {
        r.witness("case", "system_of_parameters");
        if chi <= 0 {
            r.fail("chi > 0", json!({ "chi": chi }));
        }
    } else {
        r.witness("case", "not_parameters");
        if chi != 0 {
            r.fail("chi = 0 off parameters", json!({ "chi": chi }));
        }
    }
    Ok(())
}

fn hypersurface_h1<F: Field>(inst: &Instance<F>, _p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Cm]) {
        return Ok(());
    }
    let a = inst.a();
    let e = embedding_dim(&inst.ring, a);
    let d = a.dim().unwrap_or(0);
    if e == d {
        r.inconclusive("A is regular");
        return Ok(());
    }
    let h = koszul_homology(&m_gens(inst), a)?;
    let idx = e - d - 1;
    let top = h[idx].length().unwrap_or(u64::MAX);
    let one = h[1].length().unwrap_or(u64::MAX);
    r.witness("e", e);
    r.witness("d", d);
    r.witness("index", idx);
    r.witness("length_H_index", top);
    r.witness("length_H_1", one);
    if inst.tags.contains_key(&Tag::Hypersurface) {
        if !need(r, inst, &[Tag::Hypersurface]) {
            return Ok(());
        }
        r.witness("side", "hypersurface");
        if top != 1 {
            r.fail("H_{e-d-1} ≅ k", top);
        }
        if one != 1 {
            r.fail("H_1 ≅ k", one);
        }
    } else {
        if !need(r, inst, &[Tag::NonHypersurface, Tag::Reduced]) {
            return Ok(());
        }
        r.witness("side", "non_hypersurface");
        if top == 1 {
            r.fail("H_{e-d-1} not ≅ k", top);
        }
        if one == 1 {
            r.fail("H_1 not ≅ k", one);
        }
    }
    Ok(())
}

fn perfect_duality<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Cm]) {
        return Ok(());
    }
    let (mname, m) = module(inst, p, "A")?;
    let rr = p.r.unwrap_or(0);
    let a = inst.a();
    let u = &inst.ideal;
    let d = a.dim().unwrap_or(0);
    let w = window(inst, p);
    r.witness("module", mname);
    r.witness("r", rr);
    if depth_opt(m)? != Some(d) {
        r.inconclusive(format!("M = {mname} is not maximal Cohen–Macaulay"));
        return Ok(());
    }
    let h = koszul_homology(u, a)?;
    if rr > u.len() {
        return Err(Error::InvalidInput(format!("r = {rr} exceeds the number of generators")));
    }
    let mut perfect = Vec::new();
    for (i, hi) in h.iter().enumerate().take(rr) {
        let ok = hi.is_zero() || is_perfect(hi, d)?;
        perfect.push(ok);
        if !ok {
            r.witness("perfect_below_r", &perfect);
            r.inconclusive(format!("H_{i}(I) is not perfect"));
            return Ok(());
        }
    }
    r.witness("perfect_below_r", &perfect);
    let g = finite_grade(grade(u, a)?, "grade(I, A)")?;
    r.witness("g", g);
    let cut = cutoff(inst, p).max(g);
    let lhs = ext(&h[rr], m, g, cut)?.module.hilbert();
    let coh = koszul_cohomology(u, m)?;
    let rhs = coh.get(g + rr).map(|x| x.hilbert()).unwrap_or_else(|| FpModule::zero(&inst.ring).hilbert());
    r.witness("ext_g_H_r", series(&lhs, w));
    r.witness("H_g_plus_r", series(&rhs, w));
    if lhs != rhs {
        r.fail("hilbert", "Ext^g(H_r(I), M) and H^{g+r}(I, M) differ");
    }
    let q = FpModule::cyclic(&inst.ring, u)?.hilbert();
    if let (Some(a_lo), Some(l_lo)) = (q.numerator.high().map(|_| q.numerator.low), lhs.numerator.high().map(|_| lhs.numerator.low)) {
        let shifted = q.numerator.shift(l_lo - a_lo);
        r.witness("shifted_copy_of_A_mod_I", shifted == lhs.numerator);
    }
    let (ok, edge) = edge_map(u, a, m, rr, g, w)?;
    r.witness("edge_map", edge);
    if !ok {
        r.fail("edge_map_iso", "edge map is not an isomorphism in some degree");
    }
    // Gorenstein refinement: H^i(I, M) against Hom(M*, H^i(I))
    if inst.require(Tag::Gorenstein).is_ok() && inst.require(Tag::PerfectKoszul).is_ok() {
        let mstar = hom(m, a).module;
        let ha = koszul_cohomology(u, a)?;
        let mut rows = Vec::new();
        for (i, hi) in ha.iter().enumerate() {
            let left = coh[i].hilbert();
            let right = hom(&mstar, hi).module.hilbert();
            let same = left == right;
            rows.push(json!({ "i": i, "equal": same, "H_i_M": left.numerator, "hom": right.numerator }));
            if !same {
                r.fail("gorenstein_refinement", json!({ "i": i }));
            }
        }
        r.witness("gorenstein_refinement", json!({ "label": "iso-evidence", "rows": rows }));
    } else {
        r.note("Gorenstein refinement not applicable");
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Fin {
    Finite,
    Infinite,
    /// Bass numbers vanish above `depth A` through the cutoff.
    FiniteThroughCutoff,
}

fn fin_json(f: Fin) -> &'static str {
    match f {
        Fin::Finite => "finite",
        Fin::Infinite => "infinite",
        Fin::FiniteThroughCutoff => "finite_through_cutoff",
    }
}

fn finiteness<F: Field>(m: &FpModule<F>, injective: bool, gorenstein: bool, depth_a: usize, cut: usize) -> Fin {
    if m.is_zero() {
        return Fin::Finite;
    }
    if !injective || gorenstein {
        // over a Gorenstein ring injdim and projdim are finite together
        return match pd_decided(m, depth_a) {
            Pd::Finite(_) => Fin::Finite,
            Pd::Infinite => Fin::Infinite,
        };
    }
    let mu = bass_numbers(m, cut.max(depth_a + 1));
    if mu.iter().skip(depth_a + 1).any(|&x| x != 0) {
        Fin::Infinite
    } else {
        Fin::FiniteThroughCutoff
    }
}

fn side(p: &CheckParams) -> Result<bool> {
    match p.side.as_deref().unwrap_or("projective") {
        "projective" => Ok(false),
        "injective" => Ok(true),
        s => Err(Error::InvalidInput(format!("unknown side `{s}` (expected projective or injective)"))),
    }
}

fn homology_finiteness<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<(Fin, Vec<Fin>)> {
    let (mname, m) = module(inst, p, "A")?;
    let injective = side(p)?;
    let a = inst.a();
    let depth_a = depth(a)?;
    let gor = inst.require(Tag::Gorenstein).is_ok();
    let cut = cutoff(inst, p);
    let fm = finiteness(m, injective, gor, depth_a, cut);
    let hs: Vec<Fin> = koszul_homology(&inst.ideal, m)?
        .iter()
        .map(|h| finiteness(h, injective, gor, depth_a, cut))
        .collect();
    r.witness("module", mname);
    r.witness("side", if injective { "injective" } else { "projective" });
    r.witness("M", fin_json(fm));
    r.witness("H", hs.iter().map(|&f| fin_json(f)).collect::<Vec<_>>());
    if injective && !gor {
        r.witness("cutoff", cut);
    }
    Ok((fm, hs))
}

fn all_but_one<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    let (fm, hs) = homology_finiteness(inst, p, r)?;
    if fm == Fin::Infinite {
        r.inconclusive("hypothesis fails: dimension of M is infinite");
        return Ok(());
    }
    let infinite = hs.iter().filter(|&&f| f == Fin::Infinite).count();
    let undecided = hs.iter().any(|&f| f == Fin::FiniteThroughCutoff);
    r.witness("infinite_count", infinite);
    if infinite >= 2 {
        return Ok(());
    }
    if infinite == 1 {
        if undecided || fm == Fin::FiniteThroughCutoff {
            r.inconclusive("a single infinite entry against cutoff-bounded finiteness");
        } else {
            let i = hs.iter().position(|&f| f == Fin::Infinite).unwrap();
            r.fail("all_but_one", json!({ "only_infinite": i }));
        }
        return Ok(());
    }
    if undecided || fm == Fin::FiniteThroughCutoff {
        r.verdict = Verdict::Evidence;
        r.note("finiteness witnessed only through the cutoff");
    }
    Ok(())
}

fn growth<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    let (fm, hs) = homology_finiteness(inst, p, r)?;
    let any_infinite = hs.contains(&Fin::Infinite);
    let undecided = hs.contains(&Fin::FiniteThroughCutoff) || fm == Fin::FiniteThroughCutoff;
    r.witness("premise", !any_infinite);
    match (any_infinite, fm) {
        (false, Fin::Infinite) => {
            if undecided {
                r.inconclusive("premise holds only through the cutoff");
            } else {
                r.fail("growth", "every H_i finite but M infinite");
            }
        }
        (false, _) => {
            if undecided {
                r.verdict = Verdict::Evidence;
                r.note("finiteness witnessed only through the cutoff");
            }
        }
        (true, Fin::Infinite) => {}
        (true, _) => r.inconclusive("premise fails and M is finite; nothing to test"),
    }
    Ok(())
}

struct DepthData {
    m: usize,
    g: usize,
    d: usize,
    depths: Vec<Option<usize>>,
}

fn koszul_depths<F: Field>(inst: &Instance<F>, r: &mut CheckReport) -> Result<(DepthData, Vec<FpModule<F>>)> {
    let a = inst.a();
    let u = &inst.ideal;
    let g = finite_grade(grade(u, a)?, "grade(I, A)")?;
    let h = koszul_homology(u, a)?;
    let depths = h.iter().map(depth_opt).collect::<Result<Vec<_>>>()?;
    let d = a.dim().unwrap_or(0);
    r.witness("m", u.len());
    r.witness("g", g);
    r.witness("d", d);
    r.witness("depth_H", &depths);
    Ok((DepthData { m: u.len(), g, d, depths }, h))
}

fn depth_bounds<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    let counter = match p.expect.as_deref().unwrap_or("holds") {
        "holds" => false,
        "counterexample" => true,
        s => return Err(Error::InvalidInput(format!("unknown expectation `{s}`"))),
    };
    if !need(r, inst, &[if counter { Tag::NotCm } else { Tag::Cm }]) {
        return Ok(());
    }
    let (dd, _) = koszul_depths(inst, r)?;
    let top = dd.m - dd.g;
    // cohomology-side values for cross-reference
    let coh = koszul_cohomology(&inst.ideal, inst.a())?;
    let coh_depths: Vec<Value> = ((dd.g + 1)..=dd.m).map(|i| json!([i, depth_opt(&coh[i]).ok().flatten()])).collect();
    r.witness("depth_H_upper_cohomology", coh_depths);
    if top == 0 {
        r.inconclusive("m = g: the minimum defining c is over an empty range");
        return Ok(());
    }
    let c = dd.depths[..top].iter().flatten().min().copied();
    let Some(c) = c else {
        r.inconclusive("H_i(I) vanish below m - g");
        return Ok(());
    };
    let dt = dd.depths[top].expect("H_{m-g} is nonzero");
    r.witness("c", c);
    r.witness("depth_H_top", dt);
    let first = dt >= c;
    let second = c >= dd.d - dd.g || dt > c;
    if counter {
        let confirmed = !(first && second);
        r.witness("counterexample_confirmed", confirmed);
        if !confirmed {
            r.fail("counterexample", "inequalities hold on a non-Cohen–Macaulay ring");
        }
        return Ok(());
    }
    if !first {
        r.fail("depth H_{m-g} >= c", json!({ "depth": dt, "c": c }));
    }
    if !second {
        r.fail("depth H_{m-g} >= c + 1", json!({ "depth": dt, "c": c, "d_minus_g": dd.d - dd.g }));
    }
    Ok(())
}

fn cmd_bound<F: Field>(inst: &Instance<F>, _p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Regular]) {
        return Ok(());
    }
    let (dd, h) = koszul_depths(inst, r)?;
    let top = dd.m - dd.g;
    if top == 0 {
        r.inconclusive("m = g: the maximum defining c is over an empty range");
        return Ok(());
    }
    let cmd_koszul = |i: usize| -> Option<usize> { dd.depths[i].map(|t| h[i].dim().unwrap_or(0) - t) };
    let cmd_ab = |i: usize| -> Result<Option<usize>> {
        if h[i].is_zero() {
            return Ok(None);
        }
        match pd_decided(&h[i], dd.d) {
            Pd::Finite(pd) => Ok(Some(h[i].dim().unwrap_or(0) + pd - dd.d)),
            Pd::Infinite => Err(Error::Computation("infinite projective dimension over a regular ring".into())),
        }
    };
    let mut rows = Vec::new();
    for i in 0..=top {
        let (x, y) = (cmd_koszul(i), cmd_ab(i)?);
        rows.push(json!({ "i": i, "cmd_depth": x, "cmd_projdim": y }));
        if x != y {
            r.fail("cmd agreement", json!({ "i": i, "koszul": x, "projdim": y }));
        }
    }
    r.witness("cmd", rows);
    let c = (0..top).filter_map(cmd_koszul).max().unwrap_or(0);
    let lhs = cmd_koszul(top).expect("H_{m-g} is nonzero");
    let bound = c.saturating_sub(2);
    r.witness("c", c);
    r.witness("cmd_H_top", lhs);
    r.witness("bound", bound);
    if lhs > bound {
        r.fail("cmd H_{m-g} <= max(0, c - 2)", json!({ "cmd": lhs, "bound": bound }));
    }
    Ok(())
}

fn pdim_depth<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Cm]) {
        return Ok(());
    }
    let (mname, m) = module(inst, p, "A")?;
    let a = inst.a();
    let d = a.dim().unwrap_or(0);
    let u = &inst.ideal;
    let g = finite_grade(grade(u, m)?, "grade(I, M)")?;
    let pd = pd_decided(m, d);
    r.witness("module", mname);
    r.witness("g", g);
    r.witness("d", d);
    r.witness("projdim", pd_json(pd));
    let Pd::Finite(pd) = pd else {
        r.inconclusive("projdim M is infinite");
        return Ok(());
    };
    let h = koszul_homology(u, m)?;
    let top = u.len() - g;
    let t = depth_opt(&h[top])?.expect("H_{m-g}(I, M) is nonzero");
    r.witness("depth_H_top", t);
    let (one, two) = (pd + g < d, pd + g + 1 < d);
    r.witness("applies", json!([one, two]));
    if !one {
        r.inconclusive("projdim M > d - g - 1");
        return Ok(());
    }
    if t < 1 {
        r.fail("depth >= 1", t);
    }
    if two && t < 2 {
        r.fail("depth >= 2", t);
    }
    Ok(())
}

fn hom_mcm<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Cm]) {
        return Ok(());
    }
    let (mname, m) = module(inst, p, "A")?;
    let (nname, n) = other(inst, p, "A")?;
    let d = inst.a().dim().unwrap_or(0);
    let cut = cutoff(inst, p);
    r.witness("module", mname);
    r.witness("other", nname);
    if depth_opt(n)? != Some(d) {
        r.inconclusive(format!("N = {nname} is not maximal Cohen–Macaulay"));
        return Ok(());
    }
    let res = minimal_free_resolution(m, cut + 1);
    for i in 1..=cut {
        if !ext_from(&res, n, i)?.module.is_zero() {
            r.inconclusive(format!("Ext^{i}(M, N) != 0"));
            return Ok(());
        }
    }
    r.witness("ext_vanishing_through", cut);
    let h = hom(m, n).module;
    if h.is_zero() {
        r.inconclusive("Hom(M, N) = 0");
        return Ok(());
    }
    let t = depth(&h)?;
    r.witness("depth_hom", t);
    r.witness("dim_A", d);
    if t != d {
        r.fail("depth Hom(M, N) = dim A", json!({ "depth": t, "d": d }));
    }
    Ok(())
}

fn gor_cm_duality<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Gorenstein]) {
        return Ok(());
    }
    let rr = p.r.unwrap_or(1);
    if rr == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let a = inst.a();
    let u = &inst.ideal;
    let w = window(inst, p);
    let h = koszul_homology(u, a)?;
    if rr > u.len() {
        return Err(Error::InvalidInput(format!("r = {rr} exceeds the number of generators")));
    }
    let mut cm = Vec::new();
    for (i, hi) in h.iter().enumerate().take(rr) {
        let ok = is_cm(hi)?;
        cm.push(ok);
        if !ok {
            r.witness("cm_below_r", &cm);
            r.inconclusive(format!("H_{i}(I) is not Cohen–Macaulay"));
            return Ok(());
        }
    }
    r.witness("r", rr);
    r.witness("cm_below_r", &cm);
    let g = finite_grade(grade(u, a)?, "grade(I, A)")?;
    r.witness("g", g);
    let coh = koszul_cohomology(u, a)?;
    let lhs = coh.get(rr + g).map(|x| x.hilbert()).unwrap_or_else(|| FpModule::zero(&inst.ring).hilbert());
    let rhs = ext(&h[rr], a, g, cutoff(inst, p).max(g))?.module.hilbert();
    r.witness("H_r_plus_g", series(&lhs, w));
    r.witness("ext_g_H_r", series(&rhs, w));
    if lhs != rhs {
        r.fail("hilbert", "H^{r+g}(I) and Ext^g(H_r(I), A) differ");
    }
    let (ok, edge) = edge_map(u, a, a, rr, g, w)?;
    r.witness("edge_map", edge);
    if !ok {
        r.fail("edge_map_iso", "edge map is not an isomorphism in some degree");
    }
    Ok(())
}

fn two_add<F: Field>(inst: &Instance<F>, _p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Gorenstein, Tag::QuotientCm]) {
        return Ok(());
    }
    let (dd, _) = koszul_depths(inst, r)?;
    if dd.m != dd.g + 2 {
        r.inconclusive(format!("mu(I) - grade(I) = {} != 2", dd.m - dd.g));
        return Ok(());
    }
    let t = dd.depths[1].expect("H_1 is nonzero when mu(I) > grade(I)");
    let bound = dd.d as i64 - dd.g as i64 - 2;
    r.witness("depth_H_1", t);
    r.witness("bound", bound);
    if (t as i64) < bound {
        r.fail("depth H_1 >= d - g - 2", json!({ "depth": t, "bound": bound }));
    }
    Ok(())
}

fn bass_formula<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Cm]) {
        return Ok(());
    }
    let (mname, m) = module(inst, p, "A")?;
    let d = inst.a().dim().unwrap_or(0);
    r.witness("module", mname);
    r.witness("d", d);
    if depth_opt(m)? != Some(d) {
        r.inconclusive(format!("M = {mname} is not maximal Cohen–Macaulay"));
        return Ok(());
    }
    let cut = p.cutoff.unwrap_or(d + 2).max(d + 1);
    let mu = bass_numbers(m, cut);
    r.witness("bass", &mu);
    let Some(witness) = (d + 1..=cut).find(|&i| mu[i] != 0) else {
        r.inconclusive(format!("infinite injective dimension not witnessed through {cut}"));
        return Ok(());
    };
    r.witness("injdim_infinite_witness", witness);
    let u = &inst.ideal;
    let k = inst.k();
    let vs = hyper_modules(Flavor::V, u, m, k, d + 2)?;
    let mut rows = Vec::new();
    for i in 0..=d + 1 {
        let Some(v) = vs.iter().find(|h| h.index == i as i32) else {
            return Err(Error::CutoffExceeded { cutoff: d + 2, needed: i });
        };
        let got = v.value.module.length().expect("V(u, k, M) has finite length");
        let want = match i.cmp(&d) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => mu[d],
            std::cmp::Ordering::Greater => u.len() as u64 * mu[d] + mu[d + 1],
        };
        rows.push(json!({ "i": i, "dim_V": got, "formula": want }));
        if got != want {
            r.fail("bass", json!({ "i": i, "dim_V": got, "formula": want }));
        }
    }
    r.witness("V", rows);
    let hm = koszul_cohomology(&m_gens(inst), m)?;
    let rhs = hm.get(d + 1).map_or(0, |x| x.length().unwrap_or(0));
    r.witness("mu_d_plus_1", mu[d + 1]);
    r.witness("H_d_plus_1_m_M", rhs);
    if mu[d + 1] > rhs {
        r.fail("bass-mu", json!({ "mu": mu[d + 1], "koszul": rhs }));
    }
    Ok(())
}

fn gul_evidence<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    if !need(r, inst, &[Tag::Gorenstein, Tag::QuotientCm]) {
        return Ok(());
    }
    let a = inst.a();
    let d = a.dim().unwrap_or(0);
    let u = &inst.ideal;
    let q = FpModule::cyclic(&inst.ring, u)?;
    let pd = pd_decided(&q, d);
    r.witness("projdim_A_mod_I", pd_json(pd));
    if pd == Pd::Infinite {
        r.inconclusive("projdim A/I is infinite");
        return Ok(());
    }
    let (dd, h) = koszul_depths(inst, r)?;
    if dd.m < dd.g + 2 {
        r.inconclusive("mu(I) - grade(I) < 2");
        return Ok(());
    }
    if !is_cm(&h[1])? {
        r.inconclusive("H_1(I) is not Cohen–Macaulay");
        return Ok(());
    }
    let idx = dd.m - dd.g - 1;
    let target = &h[idx];
    let b = Arc::new(inst.ring.quotient(u)?);
    let over_b = FpModule::new(&b, target.gens().to_vec(), target.rels().to_vec())?;
    let dim_b = q.dim().unwrap_or(0);
    let cut = p.cutoff.unwrap_or(dim_b + 3);
    let mu = bass_numbers(&over_b, cut);
    let beyond: Vec<usize> = (dim_b + 1..=cut).filter(|&i| mu[i] != 0).collect();
    r.witness("index", idx);
    r.witness("dim_A_mod_I", dim_b);
    r.witness("bass_over_A_mod_I", &mu);
    r.witness("nonzero_beyond_dim", &beyond);
    if beyond.is_empty() {
        r.inconclusive(format!("Bass numbers vanish above dim A/I through {cut}"));
    } else {
        r.verdict = Verdict::Evidence;
        r.note("bounded Bass-number evidence; the verdict is capped at evidence");
    }
    Ok(())
}

fn e2_pages<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    let (mname, m) = module(inst, p, "A")?;
    let (nname, n) = other(inst, p, "k")?;
    r.witness("module", mname);
    r.witness("other", nname);
    let which: Vec<u8> = p.which.map_or(vec![1, 2, 3], |w| vec![w]);
    let cut = cutoff(inst, p);
    for w in which {
        let rep = e2_compare(&inst.ideal, m, n, w, cut, p.window)?;
        let c = rep.to_check(&r.instance);
        r.witness(&format!("ss{w}"), &rep);
        if c.verdict == Verdict::Fail {
            r.fail(&format!("ss{w}"), c.witnesses.get("violation"));
        }
        for note in c.notes {
            r.note(format!("ss{w}: {note}"));
        }
    }
    Ok(())
}

fn les_exact<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    let (mname, m) = module(inst, p, "A")?;
    let (nname, n) = other(inst, p, "k")?;
    r.witness("module", mname);
    r.witness("other", nname);
    let data = KoszulData::new(inst.ideal.clone(), m.clone())?;
    let cut = cutoff(inst, p);
    for flavor in [Flavor::V, Flavor::U, Flavor::W] {
        let reps = les_verify_prefixes(&data, flavor, n, cut, p.window)?;
        let summary: Vec<Value> = reps
            .iter()
            .map(|l| json!({ "len": l.len, "window": l.window, "joints": l.joints, "terms_compared": l.terms_compared, "pass": l.pass }))
            .collect();
        r.witness(&format!("{flavor}"), summary);
        for l in &reps {
            let c = l.to_check(&r.instance);
            if c.verdict == Verdict::Fail {
                r.fail(&format!("{flavor} prefix {}", l.len), c.witnesses.get("violation"));
            }
        }
    }
    Ok(())
}

fn annihilation_check<F: Field>(inst: &Instance<F>, p: &CheckParams, r: &mut CheckReport) -> Result<()> {
    let (mname, m) = module(inst, p, "A")?;
    let (nname, n) = other(inst, p, "k")?;
    r.witness("module", mname);
    r.witness("other", nname);
    let cut = cutoff(inst, p);
    for flavor in [Flavor::V, Flavor::U, Flavor::W] {
        let recs = annihilation(flavor, &inst.ideal, m, n, cut)?;
        for a in &recs {
            if !(a.by_u && a.by_ann_m && a.by_ann_n) {
                r.fail("annihilation", a);
            }
        }
        r.witness(&format!("{flavor}"), &recs);
    }
    Ok(())
}
