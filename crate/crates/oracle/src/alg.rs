//! Polynomials, graded pieces of the ring and of presented modules.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::lin::{Echelon, Fp, Mat};

pub(crate) type Mono = Vec<u16>;

/// Sparse polynomial: sorted monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct OPoly(pub Vec<(Mono, u64)>);

impl OPoly {
    pub fn from_terms(f: Fp, terms: impl IntoIterator<Item = (Mono, u64)>) -> Self {
        let mut acc: HashMap<Mono, u64> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        let mut v: Vec<(Mono, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        OPoly(v)
    }

    pub fn scale(&self, f: Fp, c: u64) -> Self {
        OPoly::from_terms(f, self.0.iter().map(|(m, x)| (m.clone(), f.mul(*x, c))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree of a homogeneous polynomial; None for zero.
    pub fn degree(&self, w: &[u32]) -> Option<i32> {
        let (m, _) = self.0.first()?;
        let d = mono_deg(m, w);
        assert!(self.0.iter().all(|(m, _)| mono_deg(m, w) == d), "inhomogeneous polynomial");
        Some(d)
    }
}

pub(crate) fn mono_deg(m: &[u16], w: &[u32]) -> i32 {
    m.iter().zip(w).map(|(&e, &x)| e as i32 * x as i32).sum()
}

pub(crate) fn mono_mul(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All monomials of weighted degree `t`.
fn monomials(w: &[u32], t: i32) -> Vec<Mono> {
    fn go(w: &[u32], i: usize, left: i32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i32 * w[i] as i32 <= left {
            cur[i] = e;
            go(w, i + 1, left - e as i32 * w[i] as i32, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if t < 0 {
        return out;
    }
    let mut cur = vec![0; w.len()];
    go(w, 0, t, &mut cur, &mut out);
    out
}

/// Degree-`t` monomials of the polynomial ring, with an index.
pub(crate) struct SPiece {
    pub monos: Vec<Mono>,
    pub index: HashMap<Mono, usize>,
}

/// `A_t = S_t / J_t`.
pub(crate) struct APiece {
    pub s: Rc<SPiece>,
    rel: Echelon,
    pub basis: Vec<usize>,
}

/// The polynomial ring `k[x_1..x_n]` with its defining relations.
pub(crate) struct ORing {
    pub f: Fp,
    pub w: Vec<u32>,
    pub rels: Vec<(i32, OPoly)>,
    pieces: RefCell<HashMap<i32, Rc<SPiece>>>,
    apieces: RefCell<HashMap<i32, Rc<APiece>>>,
}

impl ORing {
    pub fn new(f: Fp, w: Vec<u32>, rels: Vec<OPoly>) -> Self {
        let rels = rels
            .into_iter()
            .filter(|r| !r.is_zero())
            .map(|r| (r.degree(&w).unwrap(), r))
            .collect();
        ORing {
            f,
            w,
            rels,
            pieces: RefCell::new(HashMap::new()),
            apieces: RefCell::new(HashMap::new()),
        }
    }

    pub fn apiece(&self, t: i32) -> Rc<APiece> {
        if let Some(p) = self.apieces.borrow().get(&t) {
            return p.clone();
        }
        let s = self.spiece(t);
        let n = s.monos.len();
        let mut rel = Echelon::new();
        for (dr, r) in &self.rels {
            for m in &self.spiece(t - dr).monos {
                let mut v = vec![0; n];
                for (rm, rc) in &r.0 {
                    let pos = s.index[&mono_mul(m, rm)];
                    v[pos] = self.f.add(v[pos], *rc);
                }
                rel.insert(self.f, v);
            }
        }
        let basis = non_pivots(n, &rel.pivots);
        let p = Rc::new(APiece { s, rel, basis });
        self.apieces.borrow_mut().insert(t, p.clone());
        p
    }

    #[cfg(test)]
    pub fn var(&self, i: usize) -> OPoly {
        let mut m = vec![0; self.w.len()];
        m[i] = 1;
        OPoly(vec![(m, 1)])
    }

    pub fn spiece(&self, t: i32) -> Rc<SPiece> {
        if let Some(p) = self.pieces.borrow().get(&t) {
            return p.clone();
        }
        let monos = monomials(&self.w, t);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let p = Rc::new(SPiece { monos, index });
        self.pieces.borrow_mut().insert(t, p.clone());
        p
    }
}

fn non_pivots(n: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n).filter(|&i| !is_pivot[i]).collect()
}

enum Rel {
    /// No module relations: the ring relations on each component.
    Blocks(Vec<Rc<APiece>>),
    Full(Echelon),
}

/// `k`-basis data of `X_t = (⊕_c S_{t - g_c}) / (relations)`.
pub(crate) struct MPiece {
    /// Start of component `c` among the coordinates.
    pub offsets: Vec<usize>,
    pub comps: Vec<Rc<SPiece>>,
    pub total: usize,
    rel: Rel,
    /// Coordinates that are not pivots of the relation space.
    pub basis: Vec<usize>,
}

impl MPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coord(&self, c: usize, m: &Mono) -> Option<usize> {
        self.comps[c].index.get(m).map(|&i| self.offsets[c] + i)
    }

    /// `(component, monomial)` of a coordinate.
    pub fn locate(&self, pos: usize) -> (usize, &Mono) {
        let c = self.offsets.partition_point(|&o| o <= pos) - 1;
        (c, &self.comps[c].monos[pos - self.offsets[c]])
    }

    /// Coordinates in the quotient basis of a vector of raw coordinates.
    pub fn quotient(&self, f: Fp, mut v: Vec<u64>) -> Vec<u64> {
        match &self.rel {
            Rel::Full(e) => e.reduce(f, &mut v),
            Rel::Blocks(ps) => {
                for (a, &o) in ps.iter().zip(&self.offsets) {
                    a.rel.reduce(f, &mut v[o..o + a.s.monos.len()]);
                }
            }
        }
        self.basis.iter().map(|&b| v[b]).collect()
    }
}

/// A finitely presented graded module over the ring.
pub(crate) struct OMod {
    pub ring: Rc<ORing>,
    pub gens: Vec<i32>,
    /// `(degree, [(component, polynomial)])`.
    pub rels: Vec<(i32, Vec<(usize, OPoly)>)>,
    pieces: RefCell<HashMap<i32, Rc<MPiece>>>,
    mul: RefCell<HashMap<(OPoly, i32), Rc<Mat>>>,
}

impl OMod {
    pub fn new(ring: Rc<ORing>, gens: Vec<i32>, rels: Vec<Vec<(usize, OPoly)>>) -> Self {
        let rels = rels
            .into_iter()
            .filter_map(|r| {
                let r: Vec<(usize, OPoly)> = r.into_iter().filter(|(_, p)| !p.is_zero()).collect();
                let (c, p) = r.first()?;
                let d = p.degree(&ring.w).unwrap() + gens[*c];
                for (c, p) in &r {
                    assert_eq!(p.degree(&ring.w).unwrap() + gens[*c], d, "inhomogeneous relation");
                }
                Some((d, r))
            })
            .collect();
        OMod {
            ring,
            gens,
            rels,
            pieces: RefCell::new(HashMap::new()),
            mul: RefCell::new(HashMap::new()),
        }
    }

    pub fn free(ring: Rc<ORing>, gens: Vec<i32>) -> Self {
        OMod::new(ring, gens, Vec::new())
    }

    pub fn piece(&self, t: i32) -> Rc<MPiece> {
        if let Some(p) = self.pieces.borrow().get(&t) {
            return p.clone();
        }
        let ring = &self.ring;
        let f = ring.f;
        let comps: Vec<Rc<SPiece>> = self.gens.iter().map(|&g| ring.spiece(t - g)).collect();
        let mut offsets = Vec::with_capacity(comps.len());
        let mut total = 0;
        for c in &comps {
            offsets.push(total);
            total += c.monos.len();
        }
        if self.rels.is_empty() {
            let ps: Vec<Rc<APiece>> = self.gens.iter().map(|&g| ring.apiece(t - g)).collect();
            let basis = ps
                .iter()
                .zip(&offsets)
                .flat_map(|(a, &o)| a.basis.iter().map(move |&b| o + b))
                .collect();
            let piece = Rc::new(MPiece {
                offsets,
                comps,
                total,
                rel: Rel::Blocks(ps),
                basis,
            });
            self.pieces.borrow_mut().insert(t, piece.clone());
            return piece;
        }
        let mut piece = MPiece {
            offsets,
            comps,
            total,
            rel: Rel::Full(Echelon::new()),
            basis: Vec::new(),
        };
        let mut rel = Echelon::new();
        for (c, &g) in self.gens.iter().enumerate() {
            for (dr, r) in &ring.rels {
                for m in &ring.spiece(t - g - dr).monos {
                    let mut v = vec![0; total];
                    for (rm, rc) in &r.0 {
                        let pos = piece.coord(c, &mono_mul(m, rm)).unwrap();
                        v[pos] = f.add(v[pos], *rc);
                    }
                    rel.insert(f, v);
                }
            }
        }
        for (d, r) in &self.rels {
            for m in &ring.spiece(t - d).monos {
                let mut v = vec![0; total];
                for (c, p) in r {
                    for (rm, rc) in &p.0 {
                        let pos = piece.coord(*c, &mono_mul(m, rm)).unwrap();
                        v[pos] = f.add(v[pos], *rc);
                    }
                }
                rel.insert(f, v);
            }
        }
        piece.basis = non_pivots(total, &rel.pivots);
        piece.rel = Rel::Full(rel);
        let piece = Rc::new(piece);
        self.pieces.borrow_mut().insert(t, piece.clone());
        piece
    }

    pub fn dim(&self, t: i32) -> usize {
        self.piece(t).dim()
    }

    pub fn min_gen(&self) -> Option<i32> {
        self.gens.iter().copied().min()
    }

    /// The last degree with `X_t != 0`, or None when `X` has infinite length.
    /// Past the generator degrees `X_t` is spanned by `x_v X_{t - w_v}`, so a
    /// zero run as long as the largest weight is zero for good. The search
    /// gives up `nvars * d + 2` degrees past the generators, `d` the largest
    /// relation degree.
    pub fn top(&self) -> Option<Option<i32>> {
        let Some(&g) = self.gens.iter().max() else {
            return Some(None);
        };
        let lo = self.min_gen().unwrap();
        let wmax = *self.ring.w.iter().max().unwrap_or(&1) as i32;
        let mut last = None;
        let mut zeros = 0;
        let d = self
            .ring
            .rels
            .iter()
            .map(|(d, _)| *d)
            .chain(self.rels.iter().map(|(d, _)| d - lo))
            .chain([wmax])
            .max()
            .unwrap();
        let limit = g + self.ring.w.len() as i32 * d + 2;
        let mut t = lo;
        while t <= limit {
            if self.dim(t) == 0 {
                zeros += 1;
                if t > g && zeros >= wmax {
                    return Some(last);
                }
            } else {
                zeros = 0;
                last = Some(t);
            }
            t += 1;
        }
        None
    }

    /// Multiplication by a homogeneous `p`, as a map `X_s -> X_{s + deg p}`.
    pub fn mul_map(&self, p: &OPoly, s: i32) -> Rc<Mat> {
        let key = (p.clone(), s);
        if let Some(m) = self.mul.borrow().get(&key) {
            return m.clone();
        }
        let f = self.ring.f;
        let src = self.piece(s);
        let d = p.degree(&self.ring.w).unwrap_or(0);
        let tgt = self.piece(s + d);
        let mut out = Mat::zeros(tgt.dim(), src.dim());
        if !p.is_zero() {
            for (j, &b) in src.basis.iter().enumerate() {
                let (c, m) = src.locate(b);
                let mut v = vec![0; tgt.total];
                for (pm, pc) in &p.0 {
                    let pos = tgt.coord(c, &mono_mul(m, pm)).unwrap();
                    v[pos] = f.add(v[pos], *pc);
                }
                for (i, x) in tgt.quotient(f, v).into_iter().enumerate() {
                    out.data[i * out.cols + j] = x;
                }
            }
        }
        let out = Rc::new(out);
        self.mul.borrow_mut().insert(key, out.clone());
        out
    }

    /// The element of `X` with quotient coordinates `v` in degree `t`, as
    /// polynomials per component.
    pub fn lift(&self, t: i32, v: &[u64]) -> Vec<(usize, OPoly)> {
        let f = self.ring.f;
        let piece = self.piece(t);
        let mut per: Vec<Vec<(Mono, u64)>> = vec![Vec::new(); self.gens.len()];
        for (&b, &x) in piece.basis.iter().zip(v) {
            if x != 0 {
                let (c, m) = piece.locate(b);
                per[c].push((m.clone(), x));
            }
        }
        per.into_iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(c, t)| (c, OPoly::from_terms(f, t)))
            .collect()
    }

    /// The map `Y_t -> X_t` of the homomorphism sending generator `j` of
    /// `Y` to `images[j]` in `self`.
    pub fn hom_matrix(&self, y: &OMod, images: &[Vec<(usize, OPoly)>], t: i32) -> Mat {
        let f = self.ring.f;
        let src = y.piece(t);
        let tgt = self.piece(t);
        let mut out = Mat::zeros(tgt.dim(), src.dim());
        for (j, &b) in src.basis.iter().enumerate() {
            let (c, m) = src.locate(b);
            let mut v = vec![0; tgt.total];
            for (tc, p) in &images[c] {
                for (pm, pc) in &p.0 {
                    let pos = tgt.coord(*tc, &mono_mul(m, pm)).unwrap();
                    v[pos] = f.add(v[pos], *pc);
                }
            }
            for (i, x) in tgt.quotient(f, v).into_iter().enumerate() {
                out.data[i * out.cols + j] = x;
            }
        }
        out
    }
}
