//! The hyperhomology modules `V^i(u, N, M)`, `U^i(u, M, N)` and
//! `W_i(u, M, N)` of Koszul data, their double complexes, the identification
//! of the `E_2` pages, and the long exact sequences for dropping `u_m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{colex_subsets, koszul, BoundedComplex, KoszulData, Orientation};
use crate::cxres::{ce_resolution, resolve_complex};
use crate::double::{default_r_max, ss_pages, tensor_double, Cell, DoubleComplex, Filtration, Layout};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functor::{hom_free, hom_post, hom_pre};
use crate::graded::ComplexPiece;
use crate::homalg::{annihilator, ext_from, tor_from};
use crate::linalg::{column_space, null_space, Mat, Subspace};
use crate::module::{FpModule, Subquotient};
use crate::report::{CheckReport, Verdict};
use crate::resolution::minimal_free_resolution;
use crate::ring::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flavor {
    V,
    U,
    W,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::V => "V",
            Flavor::U => "U",
            Flavor::W => "W",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V" | "v" => Ok(Flavor::V),
            "U" | "u" => Ok(Flavor::U),
            "W" | "w" => Ok(Flavor::W),
            _ => Err(Error::InvalidInput(format!("unknown flavor `{s}`"))),
        }
    }
}

impl Flavor {
    pub fn orientation(self) -> Orientation {
        match self {
            Flavor::V | Flavor::U => Orientation::Cochain,
            Flavor::W => Orientation::Chain,
        }
    }
}

/// One hyperhomology module and the complex it was read off.
#[derive(Clone, Debug)]
pub struct HyperModule<F: Field> {
    pub flavor: Flavor,
    pub index: i32,
    pub value: Subquotient<F>,
    pub provenance: String,
}

impl<F: Field> HyperModule<F> {
    /// The first element of `ideal` that fails to kill the value, if any.
    pub fn first_non_annihilator(&self, ideal: &[Poly<F>]) -> Option<usize> {
        ideal.iter().position(|p| !self.value.module.annihilated_by(p))
    }
}

fn kdata<F: Field>(u: &[Poly<F>], m: &FpModule<F>) -> Result<KoszulData<F>> {
    KoszulData::new(u.to_vec(), m.clone())
}

/// `Hom(F_p(N), K^q(u, M))`, cochain, with `p` the resolution index.
pub fn v_double<F: Field>(u: &[Poly<F>], n: &FpModule<F>, m: &FpModule<F>, cutoff: usize) -> Result<DoubleComplex<F>> {
    let ring = m.ring();
    let kc = koszul(&kdata(u, m)?, Orientation::Cochain);
    let res = minimal_free_resolution(n, cutoff);
    let top = res.frees.len();
    let mut cells = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for p in 0..top {
        let free = res.free(p);
        for q in kc.indices() {
            let x = kc.slot(q).unwrap();
            cells.insert((p as i32, q), hom_free(&free, x));
            if p + 1 < top {
                horiz.insert((p as i32, q), hom_pre(&res.d(p + 1), x));
            }
            if kc.slot(q + 1).is_some() {
                vert.insert((p as i32, q), hom_post(ring, &free, kc.diff(q).unwrap()));
            }
        }
    }
    let ct = (!res.terminated).then_some(cutoff as i32);
    DoubleComplex::new(ring, Orientation::Cochain, cells, horiz, vert, ct)
}

/// `Hom(P_{a,b}, N)` for the Cartan–Eilenberg resolution `P` of `K(u, M)`.
pub fn u_double<F: Field>(u: &[Poly<F>], m: &FpModule<F>, n: &FpModule<F>, cutoff: usize) -> Result<DoubleComplex<F>> {
    let ring = m.ring();
    let kc = koszul(&kdata(u, m)?, Orientation::Chain);
    let ce = ce_resolution(&kc, cutoff)?.ce.expect("Cartan–Eilenberg data");
    let pd = ce.double_complex()?;
    let mut cells = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for (&(a, b), x) in pd.cells() {
        cells.insert((a, b), hom_free(x.gens(), n));
        if pd.cell((a - 1, b)).is_some() {
            horiz.insert((a - 1, b), hom_pre(&pd.horizontal((a, b)), n));
        }
        if pd.cell((a, b - 1)).is_some() {
            vert.insert((a, b - 1), hom_pre(&pd.vertical((a, b)), n));
        }
    }
    DoubleComplex::new(ring, Orientation::Cochain, cells, horiz, vert, pd.complete_through)
}

/// `P_a ⊗ F_b(N)` for the free resolution `P` of `K(u, M)`.
pub fn w_double<F: Field>(u: &[Poly<F>], m: &FpModule<F>, n: &FpModule<F>, cutoff: usize) -> Result<DoubleComplex<F>> {
    let kc = koszul(&kdata(u, m)?, Orientation::Chain);
    let r = resolve_complex(&kc, cutoff)?;
    let res = minimal_free_resolution(n, cutoff);
    let fct = (!res.terminated).then_some(cutoff as i32);
    let ct = match (r.complete_through, fct) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    tensor_double(&r.total, &res.complex(), ct)
}

/// The complex whose (co)homology is the flavor, with its exactness bound.
pub fn hyper_complex<F: Field>(
    flavor: Flavor,
    u: &[Poly<F>],
    m: &FpModule<F>,
    n: &FpModule<F>,
    cutoff: usize,
) -> Result<(BoundedComplex<F>, Option<i32>, String)> {
    match flavor {
        Flavor::V => {
            let dc = v_double(u, n, m, cutoff)?;
            let ct = dc.complete_through;
            Ok((dc.total().0, ct, "Tot Hom(F(N), K^•(u, M))".into()))
        }
        Flavor::U | Flavor::W => {
            let kc = koszul(&kdata(u, m)?, Orientation::Chain);
            let r = resolve_complex(&kc, cutoff)?;
            let how = if r.ce.is_some() { "Cartan–Eilenberg total" } else { "K(u, M)" };
            if flavor == Flavor::U {
                Ok((r.total.hom_into(n)?, r.complete_through, format!("Hom({how}, N)")))
            } else {
                Ok((r.total.tensor_with(n), r.complete_through, format!("{how} ⊗ N")))
            }
        }
    }
}

fn valid(ct: Option<i32>, i: i32) -> bool {
    ct.is_none_or(|c| i < c)
}

/// All modules of the flavor whose index the cutoff determines.
pub fn hyper_modules<F: Field>(
    flavor: Flavor,
    u: &[Poly<F>],
    m: &FpModule<F>,
    n: &FpModule<F>,
    cutoff: usize,
) -> Result<Vec<HyperModule<F>>> {
    let (c, ct, prov) = hyper_complex(flavor, u, m, n, cutoff)?;
    Ok((0..=c.hi().max(0))
        .filter(|&i| valid(ct, i))
        .map(|i| HyperModule {
            flavor,
            index: i,
            value: c.homology(i),
            provenance: prov.clone(),
        })
        .collect())
}

fn single<F: Field>(
    flavor: Flavor,
    u: &[Poly<F>],
    m: &FpModule<F>,
    n: &FpModule<F>,
    i: usize,
    cutoff: usize,
) -> Result<HyperModule<F>> {
    if i > cutoff {
        return Err(Error::CutoffExceeded { cutoff, needed: i });
    }
    let (c, ct, prov) = hyper_complex(flavor, u, m, n, i + 1)?;
    debug_assert!(valid(ct, i as i32));
    Ok(HyperModule {
        flavor,
        index: i as i32,
        value: c.homology(i as i32),
        provenance: prov,
    })
}

/// `V^i(u, N, M) = H^i(Tot Hom(F(N), K^•(u, M)))`.
pub fn compute_v<F: Field>(u: &[Poly<F>], n: &FpModule<F>, m: &FpModule<F>, i: usize, cutoff: usize) -> Result<HyperModule<F>> {
    single(Flavor::V, u, m, n, i, cutoff)
}

/// `U^i(u, M, N) = H^i(Hom(P, N))` for a free resolution `P` of `K(u, M)`.
pub fn compute_u<F: Field>(u: &[Poly<F>], m: &FpModule<F>, n: &FpModule<F>, i: usize, cutoff: usize) -> Result<HyperModule<F>> {
    single(Flavor::U, u, m, n, i, cutoff)
}

/// `W_i(u, M, N) = H_i(P ⊗ N)` for a free resolution `P` of `K(u, M)`.
pub fn compute_w<F: Field>(u: &[Poly<F>], m: &FpModule<F>, n: &FpModule<F>, i: usize, cutoff: usize) -> Result<HyperModule<F>> {
    single(Flavor::W, u, m, n, i, cutoff)
}

/// Per module: which generator of `(u)`, `ann M`, `ann N` fails to annihilate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationRecord {
    pub flavor: Flavor,
    pub index: i32,
    pub by_u: bool,
    pub by_ann_m: bool,
    pub by_ann_n: bool,
}

pub fn annihilation<F: Field>(
    flavor: Flavor,
    u: &[Poly<F>],
    m: &FpModule<F>,
    n: &FpModule<F>,
    cutoff: usize,
) -> Result<Vec<AnnihilationRecord>> {
    let (am, an) = (annihilator(m), annihilator(n));
    Ok(hyper_modules(flavor, u, m, n, cutoff)?
        .iter()
        .map(|h| AnnihilationRecord {
            flavor,
            index: h.index,
            by_u: h.first_non_annihilator(u).is_none(),
            by_ann_m: h.first_non_annihilator(&am).is_none(),
            by_ann_n: h.first_non_annihilator(&an).is_none(),
        })
        .collect())
}

/// Internal-degree window: from the lowest generator degree of any slot up to
/// `maxdeg(relations) + maxdeg(u) + 4`.
pub fn default_window<F: Field>(c: &BoundedComplex<F>, u: &[Poly<F>], mods: &[&FpModule<F>]) -> (i32, i32) {
    let lo = c.indices().filter_map(|i| c.slot(i).unwrap().min_degree()).min().unwrap_or(0).min(0);
    let ring = c.ring();
    let mut rel = ring.max_relation_degree();
    for m in mods {
        for r in m.rels() {
            rel = rel.max(r.degree(m.order()).unwrap_or(0));
        }
        rel = rel.max(m.gens().iter().copied().max().unwrap_or(0));
    }
    let ud = u.iter().filter_map(|p| ring.degree(p)).max().unwrap_or(0);
    (lo, rel.max(0) + ud + 4)
}

// ---------------------------------------------------------------------------
// E_2 identification

/// A disagreement between the page and the direct Ext/Tor value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellMismatch {
    pub p: i32,
    pub q: i32,
    pub degree: i32,
    pub page: usize,
    pub direct: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseRecord {
    pub filtration: Filtration,
    pub label: String,
    /// `"p=0"` or `"b=0"`: the line the page must sit on.
    pub onto: String,
    /// Whether the computational hypothesis for the collapse holds.
    pub applicable: bool,
    pub hypothesis: String,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub which: u8,
    pub flavor: Flavor,
    pub filtration: Filtration,
    /// The conventional name of this spectral sequence, `I` or `II`.
    pub label: String,
    pub window: (i32, i32),
    pub complete: bool,
    pub cells_checked: usize,
    pub mismatches: Vec<CellMismatch>,
    /// `None` when the double complex is truncated.
    pub euler: Option<bool>,
    pub euler_failures: Vec<i32>,
    pub collapse: CollapseRecord,
    pub recurrence_ok: bool,
    pub convergence_ok: bool,
    pub nonzero_above: bool,
    pub pass: bool,
}

impl E2Report {
    pub fn to_check(&self, instance: &str) -> CheckReport {
        let mut r = CheckReport::new(&format!("e2_compare_{}", self.which), instance);
        r.witness("report", self);
        if !self.mismatches.is_empty() {
            r.fail("e2", &self.mismatches[0]);
        }
        if self.euler == Some(false) {
            r.fail("euler", &self.euler_failures);
        }
        if self.collapse.holds == Some(false) {
            r.fail("collapse", &self.collapse);
        }
        if !self.recurrence_ok || !self.convergence_ok {
            r.fail("pages", (self.recurrence_ok, self.convergence_ok));
        }
        if self.euler.is_none() {
            r.note("Euler comparison skipped: double complex truncated at the cutoff");
        }
        if r.verdict == Verdict::Pass && !self.pass {
            r.verdict = Verdict::Fail;
        }
        r
    }
}

fn ext_vanishes<F: Field>(m: &FpModule<F>, n: &FpModule<F>, upto: usize) -> bool {
    let res = minimal_free_resolution(m, upto + 1);
    (1..=upto).all(|i| ext_from(&res, n, i).map(|e| e.module.is_zero()).unwrap_or(false))
}

/// Compare `E_2` of the flavor's spectral sequence with Ext or Tor of the
/// Koszul (co)homology of `(u, M)`: `which = 1` is `Ext^p(N, H^q(u, M)) ⇒ V`,
/// `2` is `Ext^p(H_q(u, M), N) ⇒ U`, `3` is `Tor_p(H_q(u, M), N) ⇒ W`.
pub fn e2_compare<F: Field>(
    u: &[Poly<F>],
    m: &FpModule<F>,
    n: &FpModule<F>,
    which: u8,
    cutoff: usize,
    window: Option<(i32, i32)>,
) -> Result<E2Report> {
    let (flavor, dc) = match which {
        1 => (Flavor::V, v_double(u, n, m, cutoff)?),
        2 => (Flavor::U, u_double(u, m, n, cutoff)?),
        3 => (Flavor::W, w_double(u, m, n, cutoff)?),
        _ => return Err(Error::InvalidInput(format!("spectral sequence {which} is not one of 1, 2, 3"))),
    };
    let (tot, _) = dc.total();
    let window = window.unwrap_or_else(|| default_window(&tot, u, &[m, n]));
    let (e2_filt, e2_label, col_filt, col_label) = match flavor {
        Flavor::V => (Filtration::ByColumn, "I", Filtration::ByRow, "II"),
        _ => (Filtration::ByRow, "II", Filtration::ByColumn, "I"),
    };
    let r_max = default_r_max(&dc).max(2);
    let ss = ss_pages(&dc, e2_filt, r_max, window);

    // direct values: cell (p, q) of the double complex against Ext/Tor
    let data = kdata(u, m)?;
    let orient = if flavor == Flavor::V { Orientation::Cochain } else { Orientation::Chain };
    let kc = koszul(&data, orient);
    let hs: BTreeMap<i32, FpModule<F>> = kc.indices().map(|q| (q, kc.homology(q).module)).collect();
    let mut direct: HashMap<Cell, Vec<i64>> = HashMap::new();
    let n_res = minimal_free_resolution(n, cutoff + 1);
    let h_res: BTreeMap<i32, _> = if flavor == Flavor::V {
        BTreeMap::new()
    } else {
        hs.iter().map(|(&a, h)| (a, minimal_free_resolution(h, cutoff + 1))).collect()
    };
    for &c in &ss.cells {
        if flavor != Flavor::V && !h_res.contains_key(&c.0) {
            // P is exact past the Koszul range
            direct.insert(c, vec![0; (window.1 - window.0 + 1) as usize]);
            continue;
        }
        let vals = match flavor {
            // cell (p, q) = Ext^p(N, H^q)
            Flavor::V => ext_from(&n_res, &hs[&c.1], c.0 as usize)?,
            // cell (a, b) = Ext^b(H_a, N)
            Flavor::U => ext_from(&h_res[&c.0], n, c.1 as usize)?,
            Flavor::W => tor_from(&h_res[&c.0], n, c.1 as usize)?,
        }
        .module
        .hilbert_values(window.0, window.1);
        direct.insert(c, vals);
    }
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for &c in &ss.cells {
        for t in window.0..=window.1 {
            let page = ss.dim(2, c, t).unwrap();
            let d = direct[&c][(t - window.0) as usize] as usize;
            checked += 1;
            if page != d {
                mismatches.push(CellMismatch {
                    p: c.0,
                    q: c.1,
                    degree: t,
                    page,
                    direct: d,
                });
            }
        }
    }

    let complete = dc.complete_through.is_none();
    let mut euler_failures = Vec::new();
    if complete {
        for t in window.0..=window.1 {
            let k = (t - window.0) as usize;
            let e2: i64 = ss
                .cells
                .iter()
                .map(|&c| {
                    let d = ss.dim(2, c, t).unwrap() as i64;
                    if (c.0 + c.1).rem_euclid(2) == 0 { d } else { -d }
                })
                .sum();
            let h: i64 = ss
                .homology
                .iter()
                .map(|(&i, v)| if i.rem_euclid(2) == 0 { v[k] as i64 } else { -(v[k] as i64) })
                .sum();
            if e2 != h {
                euler_failures.push(t);
            }
        }
    }

    // collapse of the other spectral sequence onto the resolution-index-zero line
    let (applicable, hypothesis) = match flavor {
        Flavor::V => (ext_vanishes(n, m, cutoff.saturating_sub(1).max(1)), "Ext^{>0}(N, M) = 0".to_string()),
        Flavor::U => (ext_vanishes(m, n, cutoff.saturating_sub(1).max(1)), "Ext^{>0}(M, N) = 0".to_string()),
        Flavor::W => (true, "none".to_string()),
    };
    let css = ss_pages(&dc, col_filt, r_max, window);
    let (onto, line): (&str, fn(Cell) -> bool) = match flavor {
        Flavor::V => ("p=0", |c| c.0 == 0),
        _ => ("b=0", |c| c.1 == 0),
    };
    let holds = applicable.then(|| css.concentrated(1, line) && css.degenerates_at(2) && css.convergence_ok);
    let collapse = CollapseRecord {
        filtration: col_filt,
        label: col_label.into(),
        onto: onto.into(),
        applicable,
        hypothesis,
        holds,
    };
    let euler = complete.then_some(euler_failures.is_empty());
    let pass = mismatches.is_empty()
        && euler != Some(false)
        && holds != Some(false)
        && ss.recurrence_ok
        && ss.convergence_ok;
    Ok(E2Report {
        which,
        flavor,
        filtration: e2_filt,
        label: e2_label.into(),
        window,
        complete,
        cells_checked: checked,
        mismatches,
        euler,
        euler_failures,
        collapse,
        recurrence_ok: ss.recurrence_ok && css.recurrence_ok,
        convergence_ok: ss.convergence_ok && css.convergence_ok,
        nonzero_above: ss.nonzero_above,
        pass,
    })
}

// ---------------------------------------------------------------------------
// long exact sequences

/// `Tot(K(u, A) ⊗ F(M))`, a free resolution of `K(u, M)` that splits
/// degreewise along the subsets not containing the last element.
pub fn koszul_resolution<F: Field>(u: &[Poly<F>], m: &FpModule<F>, cutoff: usize) -> Result<(BoundedComplex<F>, Vec<Vec<bool>>, Option<i32>)> {
    let ring = m.ring();
    let ka = koszul(&kdata(u, &FpModule::ring_module(ring))?, Orientation::Chain);
    let res = minimal_free_resolution(m, cutoff);
    let fr = res.complex();
    let ct = (!res.terminated).then_some(cutoff as i32);
    let dc = tensor_double(&ka, &fr, ct)?;
    let (tot, layout) = dc.total();
    let len = u.len();
    let first = |a: i32, g: usize| !colex_subsets(len, a as usize)[g].contains(&(len.wrapping_sub(1)));
    let masks = tot
        .indices()
        .map(|i| {
            (0..tot.degs(i).len())
                .map(|comp| {
                    let ((a, b), local) = cell_of(&layout, i, comp);
                    first(a, local / fr.degs(b).len())
                })
                .collect()
        })
        .collect();
    Ok((tot, masks, ct))
}

fn cell_of(layout: &Layout, n: i32, comp: usize) -> (Cell, usize) {
    let &(c, off, _) = layout.blocks[&n]
        .iter()
        .find(|b| comp >= b.1 && comp < b.1 + b.2)
        .expect("component inside a cell");
    (c, comp - off)
}

/// The flavor's complex for `u` with the generators of the sub complex
/// (the one built on `u'`, up to shift) marked.
fn split_complex<F: Field>(
    flavor: Flavor,
    u: &[Poly<F>],
    m: &FpModule<F>,
    n: &FpModule<F>,
    cutoff: usize,
) -> Result<(BoundedComplex<F>, Vec<Vec<bool>>, Option<i32>)> {
    let len = u.len();
    let last = len - 1;
    match flavor {
        Flavor::V => {
            let dc = v_double(u, n, m, cutoff)?;
            let (tot, layout) = dc.total();
            let r = m.ngens();
            let masks = tot
                .indices()
                .map(|i| {
                    (0..tot.degs(i).len())
                        .map(|comp| {
                            let ((_, q), local) = cell_of(&layout, i, comp);
                            let nk = colex_subsets(len, q as usize).len() * r;
                            let e = local % nk;
                            colex_subsets(len, q as usize)[e / r].contains(&last)
                        })
                        .collect()
                })
                .collect();
            Ok((tot, masks, dc.complete_through))
        }
        Flavor::U | Flavor::W => {
            let (p, pm, ct) = koszul_resolution(u, m, cutoff)?;
            let nn = n.ngens();
            let (c, flip) = if flavor == Flavor::U {
                (p.hom_into(n)?, true)
            } else {
                (p.tensor_with(n), false)
            };
            let masks = c
                .indices()
                .map(|i| {
                    let k = (i - p.lo()) as usize;
                    (0..c.degs(i).len()).map(|comp| pm[k][comp / nn] != flip).collect()
                })
                .collect();
            Ok((c, masks, ct))
        }
    }
}

/// One joint of a long exact sequence in one internal degree, with the
/// dimensions of image and kernel inside the homology group there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointRecord {
    /// Homological index of the group (original indexing of the flavor).
    pub index: i32,
    /// `"sub"`, `"total"` or `"quotient"`.
    pub at: String,
    pub degree: i32,
    pub image: usize,
    pub kernel: usize,
}

struct SplitLes {
    joints: usize,
    inexact: Vec<JointRecord>,
    subcomplex_ok: bool,
    /// `(index, degree) -> dim` of sub and quotient homology, and the rank of
    /// the connecting map leaving the quotient at `index`.
    h_sub: BTreeMap<(i32, i32), usize>,
    h_quot: BTreeMap<(i32, i32), usize>,
    delta: BTreeMap<(i32, i32), usize>,
}

fn select<F: Field>(f: &F, m: &Mat<F::Elem>, rows: &[usize], cols: &[usize]) -> Mat<F::Elem> {
    let mut out = Mat::zeros(f, rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            out.set(i, j, m.get(r, c).clone());
        }
    }
    out
}

/// Exactness of the homology sequence of `0 -> A -> B -> C -> 0`, where `A`
/// is spanned by the marked generators of `b` and `C` by the others.
fn split_les<F: Field>(b: &BoundedComplex<F>, masks: &[Vec<bool>], ok: impl Fn(i32) -> bool, window: (i32, i32)) -> SplitLes {
    let f = b.ring().field();
    let sign = if b.orientation() == Orientation::Chain { -1 } else { 1 };
    let mut out = SplitLes {
        joints: 0,
        inexact: Vec::new(),
        subcomplex_ok: true,
        h_sub: BTreeMap::new(),
        h_quot: BTreeMap::new(),
        delta: BTreeMap::new(),
    };
    let norms: Vec<i32> = b.indices().map(|i| sign * i).collect();
    let (nlo, nhi) = (*norms.iter().min().unwrap(), *norms.iter().max().unwrap());
    for t in window.0..=window.1 {
        let piece = ComplexPiece::new(b, t);
        // per normalized index: (dim, sub coords, quotient coords)
        let mut split: HashMap<i32, (usize, Vec<usize>, Vec<usize>)> = HashMap::new();
        for i in b.indices() {
            let k = (i - b.lo()) as usize;
            let pc = &piece.pieces[k];
            let (mut sa, mut sc) = (Vec::new(), Vec::new());
            for (j, (_, comp)) in pc.basis.iter().enumerate() {
                if masks[k][*comp as usize] {
                    sa.push(j);
                } else {
                    sc.push(j);
                }
            }
            split.insert(sign * i, (pc.dim(), sa, sc));
        }
        let empty = (0, Vec::new(), Vec::new());
        let sp = |nn: i32| split.get(&nn).unwrap_or(&empty).clone();
        let dmat = |nn: i32| -> Mat<F::Elem> {
            let (src, tgt) = (sp(nn).0, sp(nn + 1).0);
            match piece.diff(sign * nn) {
                Some(m) if m.rows == tgt && m.cols == src && split.contains_key(&(nn + 1)) => m.clone(),
                _ => Mat::zeros(f, tgt, src),
            }
        };
        struct Lvl<E> {
            za: Subspace<E>,
            ba: Subspace<E>,
            zb: Subspace<E>,
            bb: Subspace<E>,
            zc: Subspace<E>,
            bc: Subspace<E>,
            dim: usize,
            sa: Vec<usize>,
            sc: Vec<usize>,
            delta: Mat<E>,
        }
        let level = |out: &mut SplitLes, nn: i32| {
            let (dim, sa, sc) = sp(nn);
            let (_, sa1, sc1) = sp(nn + 1);
            let d = dmat(nn);
            let dp = dmat(nn - 1);
            let (_, sa0, sc0) = sp(nn - 1);
            if !select(f, &d, &sc1, &sa).is_zero(f) {
                out.subcomplex_ok = false;
            }
            let da = select(f, &d, &sa1, &sa);
            let dc = select(f, &d, &sc1, &sc);
            Lvl {
                za: null_space(f, &da),
                ba: column_space(f, &select(f, &dp, &sa, &sa0)),
                zb: null_space(f, &d),
                bb: column_space(f, &dp),
                zc: null_space(f, &dc),
                bc: column_space(f, &select(f, &dp, &sc, &sc0)),
                delta: select(f, &d, &sa1, &sc),
                dim,
                sa,
                sc,
            }
        };
        let record = |out: &mut SplitLes, nn: i32, at: &str, im: &Subspace<F::Elem>, ker: &Subspace<F::Elem>, bd: usize| {
            out.joints += 1;
            if im.dim() != ker.dim() || !ker.contains_space(f, im) {
                out.inexact.push(JointRecord {
                    index: sign * nn,
                    at: at.into(),
                    degree: t,
                    image: im.dim().saturating_sub(bd),
                    kernel: ker.dim().saturating_sub(bd),
                });
            }
        };
        let mut l1 = level(&mut out, nlo - 1);
        for nn in nlo - 1..=nhi {
            let l = l1;
            l1 = level(&mut out, nn + 1);
            let here = ok(sign * nn);
            let next = ok(sign * (nn + 1));
            if here {
                out.h_sub.insert((sign * nn, t), l.za.dim().saturating_sub(l.ba.dim()));
                out.h_quot.insert((sign * nn, t), l.zc.dim().saturating_sub(l.bc.dim()));
                // at H(B): im ι = ker π
                let im = l.za.embed(f, l.dim, &l.sa).sum(f, &l.bb);
                let ker = l.zb.intersect(f, &l.bc.preimage_of_projection(f, l.dim, &l.sc));
                record(&mut out, nn, "total", &im, &ker, l.bb.dim());
            }
            if here && next {
                // at H(C): im π = ker δ
                let im = l.zb.project(f, &l.sc).sum(f, &l.bc);
                let ker = l.zc.intersect(f, &l1.ba.preimage(f, &l.delta));
                record(&mut out, nn, "quotient", &im, &ker, l.bc.dim());
                // at H(A) one step on: im δ = ker ι
                let im = l.zc.image(f, &l.delta).sum(f, &l1.ba);
                let ker = l1.za.intersect(f, &l1.bb.preimage_of_embedding(f, &l1.sa));
                out.delta.insert((sign * nn, t), im.dim().saturating_sub(l1.ba.dim()));
                record(&mut out, nn + 1, "sub", &im, &ker, l1.ba.dim());
            }
        }
    }
    out
}

/// A term of the sequence that disagrees with the independently computed module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermMismatch {
    /// `"sub"`, `"quotient"` or `"connecting"`.
    pub term: String,
    pub index: i32,
    pub degree: i32,
    pub sequence: usize,
    pub independent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesReport {
    pub flavor: Flavor,
    /// Length of `u`; the sequence relates `u` to its first `len - 1` elements.
    pub len: usize,
    pub window: (i32, i32),
    pub cutoff: usize,
    pub joints: usize,
    pub inexact: Vec<JointRecord>,
    pub subcomplex_ok: bool,
    pub terms_compared: usize,
    pub term_mismatches: Vec<TermMismatch>,
    pub pass: bool,
}

impl LesReport {
    pub fn to_check(&self, instance: &str) -> CheckReport {
        let mut r = CheckReport::new(&format!("les_{}", self.flavor), instance);
        r.witness("report", self);
        if !self.subcomplex_ok {
            r.fail("split", "marked generators do not span a subcomplex");
        }
        if let Some(j) = self.inexact.first() {
            r.fail("joint", j);
        }
        if let Some(t) = self.term_mismatches.first() {
            r.fail("term", t);
        }
        r
    }
}

fn rank_of_multiplication<F: Field>(x: &FpModule<F>, p: &Poly<F>, d: i32, s: i32) -> usize {
    let mut rels = x.rels().to_vec();
    rels.extend(x.multiplication(p).cols().iter().cloned());
    let q = FpModule::new(x.ring(), x.gens().to_vec(), rels).expect("homogeneous quotient");
    (x.hilbert().value(s + d) - q.hilbert().value(s + d)) as usize
}

/// The long exact sequence for `u' = u_1..u_{m-1} ⊂ u` in the chosen flavor,
/// checked for exactness at every joint in the window. Its sub and quotient
/// terms and the rank of the connecting map are compared with the modules of
/// `u'` computed from their own, unsplit complexes and with multiplication
/// by `u_m`.
pub fn les_verify<F: Field>(
    data: &KoszulData<F>,
    flavor: Flavor,
    probe: &FpModule<F>,
    cutoff: usize,
    window: Option<(i32, i32)>,
) -> Result<LesReport> {
    if data.is_empty() {
        return Err(Error::InvalidInput("long exact sequence needs at least one element".into()));
    }
    let u = &data.elements;
    let m = &data.module;
    let ring = m.ring();
    let um = &u[u.len() - 1];
    let d = ring.degree(um).unwrap();
    let (b, masks, ct) = split_complex(flavor, u, m, probe, cutoff)?;
    let prev = hyper_modules(flavor, &u[..u.len() - 1], m, probe, cutoff)?;
    let window = match window {
        Some(w) => w,
        None => {
            let cur = hyper_modules(flavor, u, m, probe, cutoff)?;
            support_window(prev.iter().chain(&cur), d).unwrap_or_else(|| default_window(&b, u, &[m, probe]))
        }
    };
    let s = split_les(&b, &masks, |i| valid(ct, i), window);

    let by_index: BTreeMap<i32, &FpModule<F>> = prev.iter().map(|h| (h.index, &h.value.module)).collect();
    let zero = FpModule::zero(ring);
    let known = |j: i32| -> Option<&FpModule<F>> {
        if j < 0 {
            Some(&zero)
        } else {
            by_index.get(&j).copied()
        }
    };
    let mut mismatches = Vec::new();
    let mut compared = 0;
    let mut cmp = |term: &str, index: i32, degree: i32, seq: usize, ind: Option<usize>| {
        if let Some(v) = ind {
            compared += 1;
            if v != seq {
                mismatches.push(TermMismatch {
                    term: term.into(),
                    index,
                    degree,
                    sequence: seq,
                    independent: v,
                });
            }
        }
    };
    let hv = |x: &FpModule<F>, t: i32| x.hilbert().value(t) as usize;
    for (&(i, t), &dim) in &s.h_sub {
        let ind = match flavor {
            Flavor::V | Flavor::U => known(i - 1).map(|x| hv(x, t + d)),
            Flavor::W => known(i).map(|x| hv(x, t)),
        };
        cmp("sub", i, t, dim, ind);
    }
    for (&(i, t), &dim) in &s.h_quot {
        let ind = match flavor {
            Flavor::V | Flavor::U => known(i).map(|x| hv(x, t)),
            Flavor::W => known(i - 1).map(|x| hv(x, t - d)),
        };
        cmp("quotient", i, t, dim, ind);
    }
    for (&(i, t), &rank) in &s.delta {
        let ind = match flavor {
            Flavor::V | Flavor::U => known(i).map(|x| rank_of_multiplication(x, um, d, t)),
            Flavor::W => known(i - 1).map(|x| rank_of_multiplication(x, um, d, t - d)),
        };
        cmp("connecting", i, t, rank, ind);
    }
    let pass = s.subcomplex_ok && s.inexact.is_empty() && mismatches.is_empty();
    Ok(LesReport {
        flavor,
        len: u.len(),
        window,
        cutoff,
        joints: s.joints,
        inexact: s.inexact,
        subcomplex_ok: s.subcomplex_ok,
        terms_compared: compared,
        term_mismatches: mismatches,
        pass,
    })
}

/// Degrees where some term of the sequence can be nonzero, when every
/// term has finite length; outside it exactness holds trivially.
fn support_window<'a, F: Field + 'a>(hs: impl Iterator<Item = &'a HyperModule<F>>, d: i32) -> Option<(i32, i32)> {
    let mut lo = i32::MAX;
    let mut hi = i32::MIN;
    for h in hs {
        let m = &h.value.module;
        m.length()?;
        let hd = m.hilbert();
        if let (Some(l), Some(t)) = (hd.low(), hd.top()) {
            lo = lo.min(l - d);
            hi = hi.max(t + d);
        }
    }
    Some(if lo > hi { (0, 0) } else { (lo, hi) })
}

/// `les_verify` for every nonempty prefix of `u`.
pub fn les_verify_prefixes<F: Field>(
    data: &KoszulData<F>,
    flavor: Flavor,
    probe: &FpModule<F>,
    cutoff: usize,
    window: Option<(i32, i32)>,
) -> Result<Vec<LesReport>> {
    (1..=data.len())
        .map(|k| {
            let d = KoszulData::new(data.elements[..k].to_vec(), data.module.clone())?;
            les_verify(&d, flavor, probe, cutoff, window)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<Ring<Rationals>> {
        Arc::new(Ring::from_strs(Rationals, vars, rels).unwrap())
    }

    fn lengths(hs: &[HyperModule<Rationals>]) -> Vec<Option<u64>> {
        hs.iter().map(|h| h.value.module.length()).collect()
    }

    #[test]
    fn empty_sequence_gives_ext_and_tor() {
        let a = ring(&["x"], &[]);
        let k = FpModule::residue_field(&a);
        let am = FpModule::ring_module(&a);
        assert!(compute_v(&[], &k, &am, 0, 3).unwrap().value.module.is_zero());
        assert_eq!(compute_v(&[], &k, &am, 1, 3).unwrap().value.module.length(), Some(1));
        let b = ring(&["x", "y"], &[]);
        let m = FpModule::cyclic(&b, &b.vars()).unwrap();
        let kb = FpModule::residue_field(&b);
        let w = hyper_modules(Flavor::W, &[], &m, &kb, 4).unwrap();
        assert_eq!(lengths(&w)[..3], [Some(1), Some(2), Some(1)]);
    }

    #[test]
    fn free_coefficients_give_koszul_homology() {
        let a = ring(&["x"], &[]);
        let k = FpModule::residue_field(&a);
        let am = FpModule::ring_module(&a);
        let x = a.vars();
        for fl in [Flavor::U, Flavor::W] {
            let hs = hyper_modules(fl, &x, &am, &k, 4).unwrap();
            assert_eq!(lengths(&hs), vec![Some(1), Some(1)], "{fl}");
        }
        let v1 = compute_v(&x, &k, &am, 1, 3).unwrap();
        assert_eq!(v1.value.module.length(), Some(1));
        assert!(v1.first_non_annihilator(&x).is_none());
    }

    #[test]
    fn annihilated_by_u_and_annihilators() {
        let a = ring(&["x", "y"], &["x*y", "y^2"]);
        let m = FpModule::cyclic(&a, &[a.parse("y").unwrap()]).unwrap();
        let k = FpModule::residue_field(&a);
        let y = vec![a.parse("y").unwrap()];
        for fl in [Flavor::V, Flavor::U, Flavor::W] {
            for r in annihilation(fl, &y, &m, &k, 3).unwrap() {
                assert!(r.by_u && r.by_ann_m && r.by_ann_n, "{fl}{}", r.index);
            }
        }
    }

    #[test]
    fn e2_pages_match_direct_values() {
        let a = ring(&["x"], &[]);
        let r = e2_compare(&a.vars(), &FpModule::ring_module(&a), &FpModule::residue_field(&a), 3, 4, None).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.euler, Some(true));
        assert_eq!(r.collapse.holds, Some(true));

        let b = ring(&["x", "y"], &[]);
        let (bm, kb) = (FpModule::ring_module(&b), FpModule::residue_field(&b));
        for which in 1..=3 {
            let r = e2_compare(&b.vars(), &bm, &kb, which, 5, None).unwrap();
            assert!(r.pass, "{which}: {r:?}");
        }
        // H^q(x, y; A) is k(2) in q = 2 only
        let dc = v_double(&b.vars(), &kb, &bm, 5).unwrap();
        let ss = ss_pages(&dc, Filtration::ByColumn, 3, (-6, 2));
        assert!(ss.concentrated(2, |c| c.1 == 2));
    }

    #[test]
    fn collapse_needs_ext_vanishing_for_v() {
        // over an artinian Gorenstein ring A is injective
        let a = ring(&["x"], &["x^2"]);
        let (am, k) = (FpModule::ring_module(&a), FpModule::residue_field(&a));
        let r = e2_compare(&a.vars(), &am, &k, 1, 4, None).unwrap();
        assert!(r.collapse.applicable);
        assert_eq!(r.collapse.holds, Some(true));
        assert!(r.pass, "{r:?}");
        let b = ring(&["x"], &[]);
        let r = e2_compare(&b.vars(), &FpModule::ring_module(&b), &FpModule::residue_field(&b), 1, 4, None).unwrap();
        assert!(!r.collapse.applicable);
    }

    #[test]
    fn long_exact_sequences() {
        let b = ring(&["x", "y"], &[]);
        let kb = FpModule::residue_field(&b);
        let data = KoszulData::new(b.vars(), FpModule::ring_module(&b)).unwrap();
        for fl in [Flavor::V, Flavor::U, Flavor::W] {
            for r in les_verify_prefixes(&data, fl, &kb, 4, None).unwrap() {
                assert!(r.pass, "{fl} {r:?}");
                assert!(r.joints > 0 && r.terms_compared > 0);
            }
        }
        let a = ring(&["x", "y"], &["x*y", "y^2"]);
        let m = FpModule::cyclic(&a, &[a.parse("y").unwrap()]).unwrap();
        let data = KoszulData::new(vec![a.parse("y").unwrap(), a.parse("x").unwrap()], m).unwrap();
        let k = FpModule::residue_field(&a);
        for fl in [Flavor::V, Flavor::U, Flavor::W] {
            for r in les_verify_prefixes(&data, fl, &k, 3, None).unwrap() {
                assert!(r.pass, "{fl} {r:?}");
            }
        }
    }

    #[test]
    fn inverted_split_is_rejected() {
        let b = ring(&["x", "y"], &[]);
        let kb = FpModule::residue_field(&b);
        let (c, masks, ct) = split_complex(Flavor::W, &b.vars(), &kb, &FpModule::ring_module(&b), 3).unwrap();
        let good = split_les(&c, &masks, |i| valid(ct, i), (0, 4));
        assert!(good.subcomplex_ok && good.inexact.is_empty());
        let flipped: Vec<Vec<bool>> = masks.iter().map(|v| v.iter().map(|x| !x).collect()).collect();
        let bad = split_les(&c, &flipped, |i| valid(ct, i), (0, 4));
        assert!(!bad.subcomplex_ok);
    }
}
