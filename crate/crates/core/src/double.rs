//! First-quadrant double complexes, their totalization with `d_h + (-1)^p d_v`,
//! and the two filtration spectral sequences computed degreewise.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundedComplex, Orientation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::ComplexPiece;
use crate::linalg::{Mat, Subspace};
use crate::matrix::{BlockBuilder, Matrix};
use crate::module::FpModule;
use crate::ring::Ring;

pub type Cell = (i32, i32);

/// Cells `(p, q)` with a horizontal map changing `p` and a vertical map
/// changing `q`, both in the direction given by the orientation.
#[derive(Clone, Debug)]
pub struct DoubleComplex<F: Field> {
    ring: Arc<Ring<F>>,
    orientation: Orientation,
    cells: BTreeMap<Cell, FpModule<F>>,
    horiz: BTreeMap<Cell, Matrix<F>>,
    vert: BTreeMap<Cell, Matrix<F>>,
    /// Totals are exact through this total degree; `None` when nothing was truncated.
    pub complete_through: Option<i32>,
}

/// Where each cell sits inside the total complex.
#[derive(Clone, Debug)]
pub struct Layout {
    /// Per total degree: `(cell, first generator, generator count)` in the slot.
    pub blocks: BTreeMap<i32, Vec<(Cell, usize, usize)>>,
}

impl Layout {
    pub fn locate(&self, n: i32, cell: Cell) -> Option<(usize, usize)> {
        self.blocks
            .get(&n)?
            .iter()
            .find(|b| b.0 == cell)
            .map(|b| (b.1, b.2))
    }
}

impl<F: Field> DoubleComplex<F> {
    /// Maps are keyed by their source cell; missing maps are zero.
    pub fn new(
        ring: &Arc<Ring<F>>,
        orientation: Orientation,
        cells: BTreeMap<Cell, FpModule<F>>,
        horiz: BTreeMap<Cell, Matrix<F>>,
        vert: BTreeMap<Cell, Matrix<F>>,
        complete_through: Option<i32>,
    ) -> Result<Self> {
        let dc = DoubleComplex {
            ring: ring.clone(),
            orientation,
            cells,
            horiz,
            vert,
            complete_through,
        };
        dc.verify()?;
        Ok(dc)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
    pub fn cells(&self) -> &BTreeMap<Cell, FpModule<F>> {
        &self.cells
    }
    pub fn cell(&self, c: Cell) -> Option<&FpModule<F>> {
        self.cells.get(&c)
    }

    fn next_h(&self, (p, q): Cell) -> Cell {
        (self.orientation.step(p), q)
    }
    fn next_v(&self, (p, q): Cell) -> Cell {
        (p, self.orientation.step(q))
    }

    fn gens(&self, c: Cell) -> Vec<i32> {
        self.cells.get(&c).map(|m| m.gens().to_vec()).unwrap_or_default()
    }

    pub fn horizontal(&self, c: Cell) -> Matrix<F> {
        self.horiz
            .get(&c)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.gens(c), self.gens(self.next_h(c))))
    }

    pub fn vertical(&self, c: Cell) -> Matrix<F> {
        self.vert
            .get(&c)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(self.gens(c), self.gens(self.next_v(c))))
    }

    /// `h∘h = 0`, `v∘v = 0` and `h∘v = v∘h` modulo the cell relations.
    pub fn verify(&self) -> Result<()> {
        let ring = &self.ring;
        let zero_in = |c: Cell, m: &Matrix<F>| -> bool {
            match self.cells.get(&c) {
                Some(x) => m.cols().iter().all(|v| x.is_zero_element(v)),
                None => true,
            }
        };
        for (&c, m) in &self.cells {
            for (maps, kind) in [(&self.horiz, "horizontal"), (&self.vert, "vertical")] {
                if let Some(f) = maps.get(&c) {
                    let t = if kind == "horizontal" { self.next_h(c) } else { self.next_v(c) };
                    if f.source != m.gens() || f.target != self.gens(t) {
                        return Err(Error::InvalidInput(format!("{kind} map at {c:?} has wrong shape")));
                    }
                }
            }
            let h = self.next_h(c);
            let v = self.next_v(c);
            let hh = self.horizontal(h).compose(ring, &self.horizontal(c));
            if !zero_in(self.next_h(h), &hh) {
                return Err(Error::InvalidInput(format!("h∘h != 0 at {c:?}")));
            }
            let vv = self.vertical(v).compose(ring, &self.vertical(c));
            if !zero_in(self.next_v(v), &vv) {
                return Err(Error::InvalidInput(format!("v∘v != 0 at {c:?}")));
            }
            let hv = self.horizontal(v).compose(ring, &self.vertical(c));
            let vh = self.vertical(h).compose(ring, &self.horizontal(c));
            if !zero_in(self.next_h(v), &hv.add(ring, &vh.neg(ring))) {
                return Err(Error::InvalidInput(format!("h and v do not commute at {c:?}")));
            }
        }
        Ok(())
    }

    pub fn totals(&self) -> BTreeSet<i32> {
        self.cells.keys().map(|(p, q)| p + q).collect()
    }

    /// The total complex and the position of every cell in it.
    pub fn total(&self) -> (BoundedComplex<F>, Layout) {
        let ring = &self.ring;
        let totals = self.totals();
        let (lo, hi) = match (totals.first(), totals.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => {
                let c = BoundedComplex::single(&FpModule::zero(ring), self.orientation);
                return (c, Layout { blocks: BTreeMap::new() });
            }
        };
        let mut blocks = BTreeMap::new();
        let mut slots = Vec::new();
        for n in lo..=hi {
            let mut parts = Vec::new();
            let mut list = Vec::new();
            let mut off = 0;
            for (&c, m) in &self.cells {
                if c.0 + c.1 != n {
                    continue;
                }
                list.push((c, off, m.ngens()));
                off += m.ngens();
                parts.push(m);
            }
            slots.push(if parts.is_empty() {
                FpModule::zero(ring)
            } else {
                FpModule::direct_sum(&parts)
            });
            blocks.insert(n, list);
        }
        let layout = Layout { blocks };
        let mut diffs = BTreeMap::new();
        for n in lo..=hi {
            let t = self.orientation.step(n);
            if t < lo || t > hi {
                continue;
            }
            let src = slots[(n - lo) as usize].gens().to_vec();
            let tgt = slots[(t - lo) as usize].gens().to_vec();
            let mut b = BlockBuilder::new(ring, src, tgt);
            for &(c, off, _) in &layout.blocks[&n] {
                if let Some((row, _)) = layout.locate(t, self.next_h(c)) {
                    b.place(row, off, &self.horizontal(c), false);
                }
                if let Some((row, _)) = layout.locate(t, self.next_v(c)) {
                    b.place(row, off, &self.vertical(c), c.0.rem_euclid(2) == 1);
                }
            }
            diffs.insert(n, b.finish());
        }
        let c = BoundedComplex::new(ring, self.orientation, lo, slots, diffs).expect("total of a double complex");
        (c, layout)
    }

    /// Whether total degree `n` has exact homology despite truncation.
    pub fn is_valid_total(&self, n: i32) -> bool {
        self.complete_through.is_none_or(|c| n < c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filtration {
    /// Filtered by the column index `p`; the first page takes vertical homology.
    ByColumn,
    /// Filtered by the row index `q`; the first page takes horizontal homology.
    ByRow,
}

/// One page: per cell, dimensions indexed by internal degree `window.0 + k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsPage {
    pub r: usize,
    pub dims: BTreeMap<String, Vec<usize>>,
    /// Rank of `d_r` leaving each cell.
    pub ranks_out: BTreeMap<String, Vec<usize>>,
}

pub fn cell_key((p, q): Cell) -> String {
    format!("{p},{q}")
}

/// A spectral sequence computed in a window of internal degrees.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSequence {
    pub filtration: Filtration,
    pub window: (i32, i32),
    /// Cells whose entries are exact despite truncation.
    pub cells: Vec<Cell>,
    pub pages: Vec<SsPage>,
    pub e_inf: BTreeMap<String, Vec<usize>>,
    /// Total homology dimensions per valid total degree.
    pub homology: BTreeMap<i32, Vec<usize>>,
    /// `E_{r+1}` agreed with the homology of `(E_r, d_r)` at every valid cell.
    pub recurrence_ok: bool,
    /// `E_∞` dimensions add up to the total homology on every valid diagonal.
    pub convergence_ok: bool,
    /// Internal degrees outside the window where some valid total slot is nonzero.
    pub truncated_below: Vec<i32>,
    pub nonzero_above: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRecord {
    pub page: String,
    pub p: i32,
    pub q: i32,
    pub degree: i32,
    pub dim: usize,
}

impl SpectralSequence {
    fn idx(&self, t: i32) -> Option<usize> {
        (t >= self.window.0 && t <= self.window.1).then(|| (t - self.window.0) as usize)
    }

    pub fn page(&self, r: usize) -> Option<&SsPage> {
        self.pages.get(r)
    }

    pub fn last_r(&self) -> usize {
        self.pages.len() - 1
    }

    /// `dim E_r^{p,q}` in internal degree `t` (pages beyond the last are `E_∞`).
    pub fn dim(&self, r: usize, c: Cell, t: i32) -> Option<usize> {
        let k = self.idx(t)?;
        let key = cell_key(c);
        let tab = if r < self.pages.len() { &self.pages[r].dims } else { &self.e_inf };
        if !self.cells.contains(&c) {
            return None;
        }
        Some(tab.get(&key).map_or(0, |v| v[k]))
    }

    pub fn e_inf_dim(&self, c: Cell, t: i32) -> Option<usize> {
        let k = self.idx(t)?;
        if !self.cells.contains(&c) {
            return None;
        }
        Some(self.e_inf.get(&cell_key(c)).map_or(0, |v| v[k]))
    }

    /// All `d_s` with `s >= r` vanish at every valid cell in the window.
    pub fn degenerates_at(&self, r: usize) -> bool {
        self.pages
            .iter()
            .skip(r)
            .all(|pg| pg.ranks_out.iter().all(|(_, v)| v.iter().all(|&x| x == 0)))
    }

    /// Nonzero entries of page `r` lie only in cells satisfying `pred`.
    pub fn concentrated(&self, r: usize, pred: impl Fn(Cell) -> bool) -> bool {
        self.cells
            .iter()
            .filter(|&&c| !pred(c))
            .all(|&c| (self.window.0..=self.window.1).all(|t| self.dim(r, c, t) == Some(0)))
    }

    /// First page equal entrywise to its successor and to all later pages.
    pub fn stabilized_at(&self) -> Option<usize> {
        (0..self.pages.len()).find(|&r| self.degenerates_at(r))
    }

    pub fn records(&self) -> Vec<PageRecord> {
        let mut out = Vec::new();
        let mut push = |name: String, tab: &BTreeMap<String, Vec<usize>>| {
            for &c in &self.cells {
                for t in self.window.0..=self.window.1 {
                    let d = tab.get(&cell_key(c)).map_or(0, |v| v[(t - self.window.0) as usize]);
                    out.push(PageRecord {
                        page: name.clone(),
                        p: c.0,
                        q: c.1,
                        degree: t,
                        dim: d,
                    });
                }
            }
        };
        for pg in &self.pages {
            push(pg.r.to_string(), &pg.dims);
        }
        push("inf".into(), &self.e_inf);
        out
    }

    /// TSV grid of page `r` in internal degree `t`: rows `q`, columns `p`.
    pub fn grid_tsv(&self, r: usize, t: i32) -> String {
        let ps: BTreeSet<i32> = self.cells.iter().map(|c| c.0).collect();
        let qs: BTreeSet<i32> = self.cells.iter().map(|c| c.1).collect();
        let mut s = String::from("q\\p");
        for p in &ps {
            s.push_str(&format!("\t{p}"));
        }
        s.push('\n');
        for q in qs.iter().rev() {
            s.push_str(&q.to_string());
            for &p in &ps {
                match self.dim(r, (p, *q), t) {
                    Some(d) => s.push_str(&format!("\t{d}")),
                    None => s.push_str("\t."),
                }
            }
            s.push('\n');
        }
        s
    }
}

type ZKey = (i32, i32, i32);

struct DegreeData<'a, F: Field> {
    f: &'a F,
    /// normalized total degree -> filtration degree of each coordinate
    coords: HashMap<i32, Vec<i32>>,
    /// `D: T^N -> T^{N+1}` by columns, nonzero entries only
    d: HashMap<i32, (usize, Vec<Vec<(usize, F::Elem)>>)>,
    /// `{x in F^s T^n : Dx in F^e T^{n+1}}` keyed by clamped `(s, e, n)`
    z: HashMap<ZKey, Subspace<F::Elem>>,
    images: HashMap<ZKey, Subspace<F::Elem>>,
    den: HashMap<(ZKey, ZKey), Subspace<F::Elem>>,
    bounds: HashMap<i32, Subspace<F::Elem>>,
}

impl<F: Field> DegreeData<'_, F> {
    fn insert_d(&mut self, n: i32, m: &Mat<F::Elem>) {
        if m.rows == 0 || m.cols == 0 {
            return;
        }
        let cols = (0..m.cols)
            .map(|j| {
                (0..m.rows)
                    .filter(|&i| !self.f.is_zero(m.get(i, j)))
                    .map(|i| (i, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        self.d.insert(n, (m.rows, cols));
    }

    fn dim(&self, n: i32) -> usize {
        self.coords.get(&n).map_or(0, |c| c.len())
    }

    fn range(&self, n: i32) -> (i32, i32) {
        let c = self.coords.get(&n).map(|c| c.as_slice()).unwrap_or(&[]);
        (c.iter().copied().min().unwrap_or(0), c.iter().copied().max().unwrap_or(0))
    }

    fn has_d(&self, n: i32) -> bool {
        self.d.contains_key(&n)
    }

    fn key(&self, s: i32, e: i32, n: i32) -> ZKey {
        let (lo, hi) = self.range(n);
        let (tlo, thi) = self.range(n + 1);
        let e = if self.has_d(n) { e.clamp(tlo, thi + 1) } else { tlo };
        (s.clamp(lo, hi + 1), e, n)
    }

    fn apply(&self, n: i32, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.f;
        let (rows, cols) = &self.d[&n];
        let mut out = vec![f.zero(); *rows];
        for (x, col) in v.iter().zip(cols) {
            if f.is_zero(x) {
                continue;
            }
            for (i, a) in col {
                out[*i] = f.add(&out[*i], &f.mul(x, a));
            }
        }
        out
    }

    /// `{x in F^s T^n : Dx in F^e T^{n+1}}`; `F^s` is spanned by coordinates
    /// of filtration degree at least `s`, so this is the kernel of a block
    /// of `D`.
    fn zse(&mut self, s: i32, e: i32, n: i32) -> Subspace<F::Elem> {
        let key = self.key(s, e, n);
        if let Some(z) = self.z.get(&key) {
            return z.clone();
        }
        let (s, e, _) = key;
        let f = self.f;
        let dim = self.dim(n);
        let tlo = self.range(n + 1).0;
        let cols: Vec<usize> = self.coords.get(&n).into_iter().flatten().enumerate().filter(|(_, &g)| g >= s).map(|(i, _)| i).collect();
        let unit = |i: usize, len: usize| {
            let mut v = vec![f.zero(); len];
            v[i] = f.one();
            v
        };
        let out = if self.has_d(n) && e > tlo {
            let target = &self.coords[&(n + 1)];
            let rows: Vec<usize> = target.iter().enumerate().filter(|(_, &g)| g < e).map(|(i, _)| i).collect();
            let mut pos = vec![usize::MAX; target.len()];
            for (a, &i) in rows.iter().enumerate() {
                pos[i] = a;
            }
            let ker = if rows.is_empty() {
                (0..cols.len()).map(|b| unit(b, cols.len())).collect()
            } else {
                let mut sub = Mat::zeros(f, rows.len(), cols.len());
                let dcols = &self.d[&n].1;
                for (b, &j) in cols.iter().enumerate() {
                    for (i, x) in &dcols[j] {
                        if pos[*i] != usize::MAX {
                            sub.set(pos[*i], b, x.clone());
                        }
                    }
                }
                sub.kernel(f)
            };
            Subspace::span(
                f,
                dim,
                ker.into_iter().map(|k| {
                    let mut v = vec![f.zero(); dim];
                    for (b, x) in k.into_iter().enumerate() {
                        v[cols[b]] = x;
                    }
                    v
                }),
            )
        } else {
            Subspace::span(f, dim, cols.iter().map(|&i| unit(i, dim)))
        };
        self.z.insert(key, out.clone());
        out
    }

    fn zr_key(&self, r: i64, s: i32, n: i32) -> ZKey {
        if r <= 0 {
            self.key(s, self.range(n + 1).0, n)
        } else {
            self.key(s, s + r as i32, n)
        }
    }

    /// `{x in F^s T^n : Dx in F^{s+r}}`.
    fn zr(&mut self, r: i64, s: i32, n: i32) -> Subspace<F::Elem> {
        let (s, e, n) = self.zr_key(r, s, n);
        self.zse(s, e, n)
    }

    /// `D(Z)` for the cached space `Z` under `key`.
    fn image_of(&mut self, key: ZKey) -> Subspace<F::Elem> {
        if let Some(i) = self.images.get(&key) {
            return i.clone();
        }
        let n = key.2;
        let z = self.zse(key.0, key.1, n);
        let out = if self.has_d(n) {
            let vecs: Vec<Vec<F::Elem>> = z.basis().iter().map(|v| self.apply(n, v)).collect();
            Subspace::span(self.f, self.dim(n + 1), vecs)
        } else {
            Subspace::zero(self.dim(n + 1))
        };
        self.images.insert(key, out.clone());
        out
    }

    fn den(&mut self, r: i64, s: i32, n: i32) -> Subspace<F::Elem> {
        let ka = self.zr_key(r - 1, s + 1, n);
        let kb = self.zr_key(r - 1, s - r as i32 + 1, n - 1);
        if let Some(d) = self.den.get(&(ka, kb)) {
            return d.clone();
        }
        let a = self.zse(ka.0, ka.1, ka.2);
        let out = if self.dim(n - 1) == 0 {
            a
        } else {
            let b = self.image_of(kb);
            a.sum(self.f, &b)
        };
        self.den.insert((ka, kb), out.clone());
        out
    }

    fn e_dim(&mut self, r: i64, s: i32, n: i32) -> usize {
        self.zr(r, s, n).dim() - self.den(r, s, n).dim()
    }

    fn rank_out(&mut self, r: i64, s: i32, n: i32) -> usize {
        if self.dim(n + 1) == 0 {
            return 0;
        }
        let img = self.image_of(self.zr_key(r, s, n));
        let den = self.den(r, s + r as i32, n + 1);
        img.sum(self.f, &den).dim() - den.dim()
    }

    /// `F^s T^n ∩ Z^n`.
    fn filtered_cycles(&mut self, s: i32, n: i32) -> Subspace<F::Elem> {
        let e = self.range(n + 1).1 + 1;
        self.zse(s, e, n)
    }

    fn cycles(&mut self, n: i32) -> Subspace<F::Elem> {
        let lo = self.range(n).0;
        self.filtered_cycles(lo, n)
    }

    fn boundaries(&mut self, n: i32) -> Subspace<F::Elem> {
        if let Some(b) = self.bounds.get(&n) {
            return b.clone();
        }
        let out = if self.dim(n - 1) == 0 {
            Subspace::zero(self.dim(n))
        } else {
            let lo = self.range(n - 1).0;
            let k = self.key(lo, self.range(n).0, n - 1);
            self.image_of(k)
        };
        self.bounds.insert(n, out.clone());
        out
    }
}

/// Pages `E_0 .. E_{r_max}`, `E_∞` and total homology of `dc` in `window`.
pub fn ss_pages<F: Field>(dc: &DoubleComplex<F>, filtration: Filtration, r_max: usize, window: (i32, i32)) -> SpectralSequence {
    let ring = dc.ring();
    let f = ring.field();
    let (total, layout) = dc.total();
    let chain = dc.orientation() == Orientation::Chain;
    let sign = if chain { -1 } else { 1 };
    let norm = |n: i32| sign * n;
    let fdeg = |c: Cell| match filtration {
        Filtration::ByColumn => sign * c.0,
        Filtration::ByRow => sign * c.1,
    };
    let valid: Vec<Cell> = dc.cells().keys().copied().filter(|c| dc.is_valid_total(c.0 + c.1)).collect();
    let valid_totals: BTreeSet<i32> = valid.iter().map(|c| c.0 + c.1).collect();
    let width = (window.1 - window.0 + 1).max(0) as usize;
    let r_max = r_max.max(1);
    let mut pages: Vec<SsPage> = (0..=r_max)
        .map(|r| SsPage {
            r,
            dims: BTreeMap::new(),
            ranks_out: BTreeMap::new(),
        })
        .collect();
    let mut e_inf: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut homology: BTreeMap<i32, Vec<usize>> = valid_totals.iter().map(|&n| (n, vec![0; width])).collect();
    for c in &valid {
        for pg in pages.iter_mut() {
            pg.dims.insert(cell_key(*c), vec![0; width]);
            pg.ranks_out.insert(cell_key(*c), vec![0; width]);
        }
        e_inf.insert(cell_key(*c), vec![0; width]);
    }
    let mut recurrence_ok = true;
    let mut convergence_ok = true;
    for t in window.0..=window.1 {
        let k = (t - window.0) as usize;
        let piece = ComplexPiece::new(&total, t);
        let mut data = DegreeData {
            f,
            coords: HashMap::new(),
            d: HashMap::new(),
            z: HashMap::new(),
            images: HashMap::new(),
            den: HashMap::new(),
            bounds: HashMap::new(),
        };
        for n in total.indices() {
            let pc = &piece.pieces[(n - total.lo()) as usize];
            let blocks = &layout.blocks[&n];
            let fd: Vec<i32> = pc
                .basis
                .iter()
                .map(|(_, comp)| {
                    let c = blocks
                        .iter()
                        .find(|b| (*comp as usize) >= b.1 && (*comp as usize) < b.1 + b.2)
                        .expect("component inside a cell")
                        .0;
                    fdeg(c)
                })
                .collect();
            data.coords.insert(norm(n), fd);
            if let Some(m) = piece.diff(n) {
                data.insert_d(norm(n), m);
            }
        }
        for &n in &valid_totals {
            let nn = norm(n);
            let h = data.cycles(nn).dim() - data.boundaries(nn).dim();
            homology.get_mut(&n).unwrap()[k] = h;
            let mut inf_sum = 0;
            for &c in valid.iter().filter(|c| c.0 + c.1 == n) {
                let s = fdeg(c);
                let key = cell_key(c);
                for r in 0..=r_max {
                    let d = data.e_dim(r as i64, s, nn);
                    pages[r].dims.get_mut(&key).unwrap()[k] = d;
                    let ro = data.rank_out(r as i64, s, nn);
                    pages[r].ranks_out.get_mut(&key).unwrap()[k] = ro;
                }
                let b = data.boundaries(nn);
                let fs = data.filtered_cycles(s, nn).sum(f, &b);
                let fs1 = data.filtered_cycles(s + 1, nn).sum(f, &b);
                let d = fs.dim() - fs1.dim();
                e_inf.get_mut(&key).unwrap()[k] = d;
                inf_sum += d;
            }
            if inf_sum != h {
                convergence_ok = false;
            }
        }
        // E_{r+1} = H(E_r, d_r) at valid cells whose neighbours are valid too
        for &c in &valid {
            let key = cell_key(c);
            let s = fdeg(c);
            let nn = norm(c.0 + c.1);
            for r in 0..r_max {
                let here = pages[r].dims[&key][k];
                let out = pages[r].ranks_out[&key][k];
                let into = data.rank_out(r as i64, s - r as i32, nn - 1);
                if here < out + into || pages[r + 1].dims[&key][k] != here - out - into {
                    recurrence_ok = false;
                }
            }
        }
    }
    let mut truncated_below = BTreeSet::new();
    let mut nonzero_above = false;
    for &n in &valid_totals {
        let h = total.slot(n).unwrap().hilbert();
        if let Some(low) = h.low() {
            truncated_below.extend((low..window.0).filter(|&t| h.value(t) != 0));
        }
        match h.top() {
            Some(top) if top <= window.1 => {}
            _ if h.is_zero() => {}
            _ => nonzero_above = true,
        }
    }
    SpectralSequence {
        filtration,
        window,
        cells: valid,
        pages,
        e_inf,
        homology,
        recurrence_ok,
        convergence_ok,
        truncated_below: truncated_below.into_iter().collect(),
        nonzero_above,
    }
}

/// Enough pages for every differential to have vanished.
pub fn default_r_max<F: Field>(dc: &DoubleComplex<F>) -> usize {
    let ps: BTreeSet<i32> = dc.cells().keys().map(|c| c.0).collect();
    let qs: BTreeSet<i32> = dc.cells().keys().map(|c| c.1).collect();
    let span = |s: &BTreeSet<i32>| match (s.first(), s.last()) {
        (Some(a), Some(b)) => (b - a) as usize,
        _ => 0,
    };
    span(&ps).max(span(&qs)) + 2
}

/// Tensor product of two chain complexes of free modules, `P_p ⊗ F_q`.
pub fn tensor_double<F: Field>(
    p: &BoundedComplex<F>,
    fr: &BoundedComplex<F>,
    complete_through: Option<i32>,
) -> Result<DoubleComplex<F>> {
    use crate::functor::{tensor_free, tensor_pre};
    let ring = p.ring();
    if !p.is_free() || !fr.is_free() {
        return Err(Error::InvalidInput("tensor double complex needs free slots".into()));
    }
    let mut cells = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for a in p.indices() {
        for b in fr.indices() {
            let x = fr.slot(b).unwrap();
            cells.insert((a, b), tensor_free(&p.degs(a), x));
            if let Some(d) = p.diff(a).filter(|_| p.slot(a - 1).is_some()) {
                horiz.insert((a, b), tensor_pre(d, x));
            }
            if let Some(d) = fr.diff(b).filter(|_| fr.slot(b - 1).is_some()) {
                vert.insert((a, b), crate::functor::tensor_post(ring, &p.degs(a), d));
            }
        }
    }
    DoubleComplex::new(ring, Orientation::Chain, cells, horiz, vert, complete_through)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{koszul, KoszulData};
    use crate::field::Rationals;
    use crate::resolution::minimal_free_resolution;

    #[test]
    fn koszul_times_resolution_of_k() {
        let a = Arc::new(Ring::from_strs(Rationals, &["x"], &[]).unwrap());
        let k = koszul(&KoszulData::new(a.vars(), FpModule::ring_module(&a)).unwrap(), Orientation::Chain);
        let res = minimal_free_resolution(&FpModule::residue_field(&a), 4).complex();
        let dc = tensor_double(&k, &res, None).unwrap();
        let (tot, _) = dc.total();
        tot.verify().unwrap();
        assert_eq!(tot.homology(0).module.length(), Some(1));
        assert_eq!(tot.homology(1).module.length(), Some(1));
        let ss = ss_pages(&dc, Filtration::ByColumn, 3, (0, 3));
        assert!(ss.recurrence_ok && ss.convergence_ok);
        let ss2 = ss_pages(&dc, Filtration::ByRow, 3, (0, 3));
        assert!(ss2.recurrence_ok && ss2.convergence_ok);
        // E_1 by column: Tor_q(K_p, k) sits on q = 0
        assert!(ss.concentrated(1, |c| c.1 == 0));
    }

    #[test]
    fn single_column_is_its_own_limit() {
        let a = Arc::new(Ring::from_strs(Rationals, &["x", "y"], &[]).unwrap());
        let k = koszul(&KoszulData::new(a.vars(), FpModule::ring_module(&a)).unwrap(), Orientation::Chain);
        let one = BoundedComplex::single(&FpModule::ring_module(&a), Orientation::Chain);
        let dc = tensor_double(&one, &k, None).unwrap();
        let ss = ss_pages(&dc, Filtration::ByColumn, 3, (0, 4));
        for &c in &ss.cells {
            for t in 0..=4 {
                assert_eq!(ss.dim(1, c, t), ss.e_inf_dim(c, t));
            }
        }
        assert!(ss.degenerates_at(1));
    }
}
