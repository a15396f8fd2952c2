//! Resolutions and complexes built degree by degree.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::alg::{OMod, OPoly};
use crate::lin::{Echelon, Mat};

/// An element of a module given by its components.
pub(crate) type Elt = Vec<(usize, OPoly)>;

/// A minimal free resolution of `X`, known through internal degree `top`.
/// `images[i][h]` is the image of generator `h` of `F_i`, in `X` for `i = 0`
/// and in `F_{i - 1}` otherwise.
pub(crate) struct Res {
    pub gens: Vec<Vec<i32>>,
    pub images: Vec<Vec<Elt>>,
}

pub(crate) fn resolve(x: &Rc<OMod>, steps: usize, top: i32) -> Res {
    let ring = x.ring.clone();
    let f = ring.f;
    let lo = x.min_gen().unwrap_or(0);
    let mut gens: Vec<Vec<i32>> = Vec::new();
    let mut images: Vec<Vec<Elt>> = Vec::new();
    for i in 0..=steps {
        let tgt: Rc<OMod> = if i == 0 {
            x.clone()
        } else {
            Rc::new(OMod::free(ring.clone(), gens[i - 1].clone()))
        };
        let prev = (i > 0).then(|| {
            let src = tgt.clone();
            let into: Rc<OMod> = if i == 1 {
                x.clone()
            } else {
                Rc::new(OMod::free(ring.clone(), gens[i - 2].clone()))
            };
            (src, into, images[i - 1].clone())
        });
        let mut g: Vec<i32> = Vec::new();
        let mut im: Vec<Elt> = Vec::new();
        for t in lo..=top {
            let n = tgt.dim(t);
            if n == 0 {
                continue;
            }
            let cycles = match &prev {
                None => Mat::zeros(0, n).kernel(f),
                Some((src, into, imgs)) => into.hom_matrix(src, imgs, t).kernel(f),
            };
            if cycles.is_empty() {
                continue;
            }
            let mut span = Echelon::new();
            if !g.is_empty() {
                let cur = OMod::free(ring.clone(), g.clone());
                let m = tgt.hom_matrix(&cur, &im, t);
                for j in 0..m.cols {
                    span.insert(f, m.column(j));
                }
            }
            for z in cycles {
                if span.insert(f, z.clone()) {
                    g.push(t);
                    im.push(tgt.lift(t, &z));
                }
            }
        }
        let done = g.is_empty();
        gens.push(g);
        images.push(im);
        if done {
            break;
        }
    }
    Res { gens, images }
}

impl Res {
    pub fn gens(&self, i: usize) -> &[i32] {
        self.gens.get(i).map(|g| g.as_slice()).unwrap_or(&[])
    }

    /// Entries `(j, h, p)` of `d_i: F_i -> F_{i - 1}`, for `i >= 1`.
    pub fn diff(&self, i: usize) -> Vec<(usize, usize, OPoly)> {
        let mut out = Vec::new();
        if let Some(im) = self.images.get(i) {
            for (h, e) in im.iter().enumerate() {
                for (j, p) in e {
                    out.push((*j, h, p.clone()));
                }
            }
        }
        out
    }
}

/// A complex whose terms are sums of shifted copies `X(s)` of one module,
/// so that the degree-`t` piece of a term is `⊕ X_{t + s}`. A map entry
/// `(r, c, p)` multiplies copy `c` by `p` into copy `r`.
pub(crate) struct Cx {
    pub base: Rc<OMod>,
    pub terms: BTreeMap<i32, Vec<i32>>,
    /// `maps[i]` goes from term `i` to term `i + step`.
    pub maps: BTreeMap<i32, Vec<(usize, usize, OPoly)>>,
    pub step: i32,
}

impl Cx {
    fn offsets(&self, i: i32, t: i32) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = 0;
        for &s in self.terms.get(&i).map(|v| v.as_slice()).unwrap_or(&[]) {
            out.push(acc);
            acc += self.base.dim(t + s);
        }
        out.push(acc);
        out
    }

    pub fn dim(&self, i: i32, t: i32) -> usize {
        *self.offsets(i, t).last().unwrap()
    }

    /// The degree-`t` matrix of the map out of term `i`.
    pub fn matrix(&self, i: i32, t: i32) -> Mat {
        let f = self.base.ring.f;
        let j = i + self.step;
        let so = self.offsets(i, t);
        let to = self.offsets(j, t);
        let mut out = Mat::zeros(*to.last().unwrap(), *so.last().unwrap());
        let (Some(src), Some(tgt)) = (self.terms.get(&i), self.terms.get(&j)) else {
            return out;
        };
        let w = &self.base.ring.w;
        for (r, c, p) in self.maps.get(&i).map(|v| v.as_slice()).unwrap_or(&[]) {
            let d = p.degree(w).unwrap();
            assert_eq!(tgt[*r], src[*c] + d, "map entry of the wrong degree");
            let block = self.base.mul_map(p, t + src[*c]);
            for a in 0..block.rows {
                for b in 0..block.cols {
                    let v = block.get(a, b);
                    if v != 0 {
                        out.add_to(f, to[*r] + a, so[*c] + b, v);
                    }
                }
            }
        }
        out
    }

    pub fn homology(&self, i: i32, t: i32) -> usize {
        let f = self.base.ring.f;
        let n = self.dim(i, t);
        if n == 0 {
            return 0;
        }
        n - self.matrix(i, t).rank(f) - self.matrix(i - self.step, t).rank(f)
    }
}

fn subsets(m: usize, q: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|b| b.count_ones() as usize == q)
        .map(|b| (0..m).filter(|j| b >> j & 1 == 1).collect())
        .collect()
}

/// Koszul faces: `(S, S \ {s_k}, k)` for every `q`-subset `S`.
fn faces(m: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for s in subsets(m, q) {
        for k in 0..s.len() {
            let mut face = s.clone();
            face.remove(k);
            out.push((s.clone(), face, k));
        }
    }
    out
}

struct Cells {
    /// `(a, b) -> shifts`, with labels `(h, S)` alongside.
    shifts: BTreeMap<(i32, i32), Vec<i32>>,
    labels: BTreeMap<(i32, i32), BTreeMap<(usize, Vec<usize>), usize>>,
}

impl Cells {
    fn new() -> Self {
        Cells {
            shifts: BTreeMap::new(),
            labels: BTreeMap::new(),
        }
    }
    fn add(&mut self, cell: (i32, i32), h: usize, s: Vec<usize>, shift: i32) {
        let v = self.shifts.entry(cell).or_default();
        self.labels.entry(cell).or_default().insert((h, s), v.len());
        v.push(shift);
    }
    fn at(&self, cell: (i32, i32), h: usize, s: &[usize]) -> Option<usize> {
        self.labels.get(&cell)?.get(&(h, s.to_vec())).copied()
    }
}

/// Totalizes `cells` with horizontal and vertical entries given per cell,
/// using `D = d_h + (-1)^a d_v`.
fn totalize(
    base: Rc<OMod>,
    cells: &Cells,
    horiz: &BTreeMap<(i32, i32), Vec<(usize, usize, OPoly)>>,
    vert: &BTreeMap<(i32, i32), Vec<(usize, usize, OPoly)>>,
    step: i32,
) -> Cx {
    let f = base.ring.f;
    let mut terms: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    let mut offset: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (&(a, b), sh) in &cells.shifts {
        let v = terms.entry(a + b).or_default();
        offset.insert((a, b), v.len());
        v.extend(sh);
    }
    let mut maps: BTreeMap<i32, Vec<(usize, usize, OPoly)>> = BTreeMap::new();
    for (&(a, b), es) in horiz {
        let (Some(&so), Some(&to)) = (offset.get(&(a, b)), offset.get(&(a + step, b))) else {
            continue;
        };
        let v = maps.entry(a + b).or_default();
        for (r, c, p) in es {
            v.push((to + r, so + c, p.clone()));
        }
    }
    for (&(a, b), es) in vert {
        let (Some(&so), Some(&to)) = (offset.get(&(a, b)), offset.get(&(a, b + step))) else {
            continue;
        };
        let v = maps.entry(a + b).or_default();
        for (r, c, p) in es {
            let p = if a % 2 == 0 { p.clone() } else { p.scale(f, f.neg(1)) };
            v.push((to + r, so + c, p));
        }
    }
    Cx {
        base,
        terms,
        maps,
        step,
    }
}

fn degree_of(base: &OMod, u: &[OPoly], s: &[usize]) -> i32 {
    s.iter().map(|&j| u[j].degree(&base.ring.w).unwrap()).sum()
}

/// `Tot Hom(F, K^•(u, X))` for a resolution `F`, with `X` the base.
pub(crate) fn hom_tot(res: &Res, u: &[OPoly], base: Rc<OMod>, steps: usize) -> Cx {
    let f = base.ring.f;
    let m = u.len();
    let mut cells = Cells::new();
    for a in 0..=steps {
        for (h, &g) in res.gens(a).iter().enumerate() {
            for q in 0..=m {
                for s in subsets(m, q) {
                    let d = degree_of(&base, u, &s);
                    cells.add((a as i32, q as i32), h, s, g + d);
                }
            }
        }
    }
    let mut horiz: BTreeMap<(i32, i32), Vec<(usize, usize, OPoly)>> = BTreeMap::new();
    let mut vert: BTreeMap<(i32, i32), Vec<(usize, usize, OPoly)>> = BTreeMap::new();
    for a in 0..steps {
        for (j, h, p) in res.diff(a + 1) {
            for q in 0..=m {
                for s in subsets(m, q) {
                    let key = (a as i32, q as i32);
                    let (Some(c), Some(r)) = (cells.at(key, j, &s), cells.at((a as i32 + 1, q as i32), h, &s)) else {
                        continue;
                    };
                    horiz.entry(key).or_default().push((r, c, p.clone()));
                }
            }
        }
    }
    for a in 0..=steps {
        for h in 0..res.gens(a).len() {
            for q in 1..=m {
                for (s, face, k) in faces(m, q) {
                    let key = (a as i32, q as i32 - 1);
                    let c = cells.at(key, h, &face).unwrap();
                    let r = cells.at((a as i32, q as i32), h, &s).unwrap();
                    let p = if k % 2 == 0 { u[s[k]].clone() } else { u[s[k]].scale(f, f.neg(1)) };
                    vert.entry(key).or_default().push((r, c, p));
                }
            }
        }
    }
    totalize(base, &cells, &horiz, &vert, 1)
}

/// `Tot(F ⊗ K(u, X))` for a resolution `F`, with `X` the base.
pub(crate) fn tensor_tot(res: &Res, u: &[OPoly], base: Rc<OMod>, steps: usize) -> Cx {
    let f = base.ring.f;
    let m = u.len();
    let mut cells = Cells::new();
    for a in 0..=steps {
        for (h, &g) in res.gens(a).iter().enumerate() {
            for q in 0..=m {
                for s in subsets(m, q) {
                    let d = degree_of(&base, u, &s);
                    cells.add((a as i32, q as i32), h, s, -g - d);
                }
            }
        }
    }
    let mut horiz: BTreeMap<(i32, i32), Vec<(usize, usize, OPoly)>> = BTreeMap::new();
    let mut vert: BTreeMap<(i32, i32), Vec<(usize, usize, OPoly)>> = BTreeMap::new();
    for a in 1..=steps {
        for (j, h, p) in res.diff(a) {
            for q in 0..=m {
                for s in subsets(m, q) {
                    let key = (a as i32, q as i32);
                    let (Some(c), Some(r)) = (cells.at(key, h, &s), cells.at((a as i32 - 1, q as i32), j, &s)) else {
                        continue;
                    };
                    horiz.entry(key).or_default().push((r, c, p.clone()));
                }
            }
        }
    }
    for a in 0..=steps {
        for h in 0..res.gens(a).len() {
            for q in 1..=m {
                for (s, face, k) in faces(m, q) {
                    let key = (a as i32, q as i32);
                    let c = cells.at(key, h, &s).unwrap();
                    let r = cells.at((a as i32, q as i32 - 1), h, &face).unwrap();
                    let p = if k % 2 == 0 { u[s[k]].clone() } else { u[s[k]].scale(f, f.neg(1)) };
                    vert.entry(key).or_default().push((r, c, p));
                }
            }
        }
    }
    totalize(base, &cells, &horiz, &vert, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::ORing;
    use crate::lin::Fp;

    const F: Fp = Fp { p: 32003 };

    fn ring(w: Vec<u32>, rels: Vec<OPoly>) -> Rc<ORing> {
        Rc::new(ORing::new(F, w, rels))
    }

    fn sq(n: usize, i: usize) -> OPoly {
        let mut m = vec![0; n];
        m[i] = 2;
        OPoly(vec![(m, 1)])
    }

    fn residue(r: &Rc<ORing>) -> Rc<OMod> {
        let rels = (0..r.w.len()).map(|i| vec![(0, r.var(i))]).collect();
        Rc::new(OMod::new(r.clone(), vec![0], rels))
    }

    fn assert_d2(c: &Cx, idx: std::ops::RangeInclusive<i32>, degs: std::ops::RangeInclusive<i32>) {
        for i in idx {
            for t in degs.clone() {
                let a = c.matrix(i, t);
                let b = c.matrix(i + c.step, t);
                assert!(b.mul(F, &a).is_zero(), "d^2 != 0 at {i}, {t}");
            }
        }
    }

    #[test]
    fn tor_of_residue_over_dual_numbers() {
        let r = ring(vec![1], vec![sq(1, 0)]);
        let k = residue(&r);
        let res = resolve(&k, 4, 6);
        assert_eq!(res.gens, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        let c = tensor_tot(&res, &[], k.clone(), 4);
        for i in 0..4 {
            let dims: Vec<usize> = (0..5).map(|t| c.homology(i, t)).collect();
            let want: Vec<usize> = (0..5).map(|t| (t == i) as usize).collect();
            assert_eq!(dims, want);
        }
    }

    #[test]
    fn koszul_homology_twist() {
        let r = ring(vec![1, 1], vec![sq(2, 0)]);
        let a = Rc::new(OMod::free(r.clone(), vec![0]));
        let u = vec![r.var(0), r.var(1)];
        let res = resolve(&a, 2, 4);
        let c = tensor_tot(&res, &u, a, 2);
        assert_d2(&c, 0..=2, 0..=4);
        let h1: Vec<usize> = (0..5).map(|t| c.homology(1, t)).collect();
        assert_eq!(h1, vec![0, 0, 1, 0, 0]);
        let h0: Vec<usize> = (0..5).map(|t| c.homology(0, t)).collect();
        assert_eq!(h0, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn hom_total_squares_to_zero() {
        let r = ring(vec![1, 1], vec![sq(2, 0)]);
        let k = residue(&r);
        let u = vec![r.var(0), r.var(1)];
        let res = resolve(&k, 3, 4);
        let c = hom_tot(&res, &u, k.clone(), 3);
        assert_d2(&c, 0..=3, -4..=2);
        let c = tensor_tot(&res, &u, k, 3);
        assert_d2(&c, 1..=4, 0..=5);
    }

    #[test]
    fn ext_into_polynomial_ring() {
        let r = ring(vec![1], vec![]);
        let k = residue(&r);
        let a = Rc::new(OMod::free(r.clone(), vec![0]));
        let res = resolve(&k, 2, 4);
        let c = hom_tot(&res, &[], a, 2);
        let e1: Vec<usize> = (-3..=1).map(|t| c.homology(1, t)).collect();
        assert_eq!(e1, vec![0, 0, 1, 0, 0]);
        assert!((-3..=3).all(|t| c.homology(0, t) == 0));
    }
}
