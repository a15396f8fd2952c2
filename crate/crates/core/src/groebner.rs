//! Homogeneous Buchberger algorithm for submodules of graded free modules.
//!
//! Pairs are processed degree by degree (normal selection). Within a degree,
//! S-pairs are reduced before queued generators, so the remainder of a
//! generator is nonzero exactly when it is not in the span of what came
//! before it. That is how minimal generating sets are read off.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::vector::{ModuleOrder, Vector};

/// A Gröbner basis: monic elements with an index of leading terms.
#[derive(Clone, Debug)]
pub struct Gb<F: Field> {
    field: F,
    order: ModuleOrder,
    elems: Vec<Vector<F::Elem>>,
    by_comp: Vec<Vec<usize>>,
}

impl<F: Field> Gb<F> {
    pub fn empty(field: F, order: ModuleOrder) -> Self {
        let rank = order.rank();
        Gb {
            field,
            order,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); rank],
        }
    }

    /// Wraps a set already known to be a Gröbner basis.
    pub fn from_basis(field: F, order: ModuleOrder, elems: Vec<Vector<F::Elem>>) -> Self {
        let mut gb = Gb::empty(field, order);
        for e in elems {
            gb.push(e);
        }
        gb
    }

    fn push(&mut self, v: Vector<F::Elem>) -> usize {
        let v = v.make_monic(&self.field);
        let c = v.lead().expect("nonzero basis element").comp as usize;
        let k = self.elems.len();
        self.elems.push(v);
        self.by_comp[c].push(k);
        k
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Vector<F::Elem>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading monomials on component `c`.
    pub fn leading_monomials(&self, c: u32) -> Vec<Monomial> {
        self.by_comp[c as usize]
            .iter()
            .map(|&i| self.elems[i].lead().unwrap().mono.clone())
            .collect()
    }

    fn find_reducer(&self, m: &Monomial, comp: u32) -> Option<usize> {
        self.by_comp[comp as usize]
            .iter()
            .copied()
            .find(|&i| self.elems[i].lead().unwrap().mono.divides(m))
    }

    pub fn is_reducible(&self, m: &Monomial, comp: u32) -> bool {
        self.find_reducer(m, comp).is_some()
    }

    /// Full normal form: no term of the result is divisible by a leading term.
    pub fn normal_form(&self, v: &Vector<F::Elem>) -> Vector<F::Elem> {
        let f = &self.field;
        let mut v = v.clone();
        let mut i = 0;
        while i < v.len() {
            let t = &v.terms()[i];
            match self.find_reducer(&t.mono, t.comp) {
                Some(g) => {
                    let lt = self.elems[g].lead().unwrap();
                    let q = t.mono.div_exact(&lt.mono);
                    let c = f.neg(&t.coeff);
                    let g = &self.elems[g];
                    v.add_scaled_tail(i, g, &c, Some(&q), f, &self.order);
                }
                None => i += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector<F::Elem>) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Minimal and tail-reduced version of this basis, sorted by leading term.
    pub fn reduced(&self) -> Gb<F> {
        let f = &self.field;
        let mut keep: Vec<usize> = Vec::new();
        for (i, e) in self.elems.iter().enumerate() {
            let lt = e.lead().unwrap();
            let redundant = self.elems.iter().enumerate().any(|(j, o)| {
                let lo = o.lead().unwrap();
                j != i
                    && lo.comp == lt.comp
                    && lo.mono.divides(&lt.mono)
                    && (lo.mono != lt.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut out: Vec<Vector<F::Elem>> = Vec::with_capacity(keep.len());
        let minimal = Gb::from_basis(
            f.clone(),
            self.order.clone(),
            keep.iter().map(|&i| self.elems[i].clone()).collect(),
        );
        for (k, &i) in keep.iter().enumerate() {
            let e = &self.elems[i];
            let lead = Vector::from_sorted(vec![e.lead().unwrap().clone()]);
            let tail = Vector::from_sorted(e.terms()[1..].to_vec());
            let others = Gb::from_basis(
                f.clone(),
                self.order.clone(),
                minimal
                    .elems
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, v)| v.clone())
                    .collect(),
            );
            let t = others.normal_form(&tail);
            out.push(lead.add(&t, f, &self.order).make_monic(f));
        }
        let ord = self.order.clone();
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            ord.cmp(&x.mono, x.comp, &y.mono, y.comp)
        });
        Gb::from_basis(f.clone(), self.order.clone(), out)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    alive: bool,
}

/// A generator whose remainder was nonzero when it was reached.
#[derive(Clone, Debug)]
pub struct MinimalGen<E> {
    pub tag: usize,
    pub degree: i32,
    pub remainder: Vector<E>,
}

/// Incremental homogeneous Buchberger driver.
#[derive(Debug)]
pub struct GbBuilder<F: Field> {
    gb: Gb<F>,
    weights: Vec<u32>,
    pairs: Vec<Pair>,
    queue: BTreeMap<i32, Vec<usize>>,
    gens: BTreeMap<i32, Vec<(usize, Vector<F::Elem>)>>,
    product_criterion: bool,
}

impl<F: Field> GbBuilder<F> {
    pub fn new(field: F, order: ModuleOrder, weights: Vec<u32>) -> Self {
        // the coprime criterion is only valid for ideals
        let product_criterion = order.rank() == 1;
        GbBuilder {
            gb: Gb::empty(field, order),
            weights,
            pairs: Vec::new(),
            queue: BTreeMap::new(),
            gens: BTreeMap::new(),
            product_criterion,
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.gb.order
    }

    /// Elements that together already form a Gröbner basis of their span
    /// (typically the ring relations times each basis vector). Pairs among
    /// them are skipped.
    pub fn add_background(&mut self, elems: impl IntoIterator<Item = Vector<F::Elem>>) {
        for e in elems {
            if !e.is_zero() {
                self.gb.push(e);
            }
        }
    }

    /// Queue a homogeneous generator. Zero vectors are ignored.
    pub fn add_generator(&mut self, v: Vector<F::Elem>, tag: usize) {
        debug_assert!(v.is_homogeneous(&self.gb.order));
        if let Some(d) = v.degree(&self.gb.order) {
            self.gens.entry(d).or_default().push((tag, v));
        }
    }

    fn next_degree(&self) -> Option<i32> {
        let a = self.queue.keys().next().copied();
        let b = self.gens.keys().next().copied();
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Process everything up to degree `limit` (all degrees when `None`),
    /// returning the generators found to be minimal, in processing order.
    pub fn run(&mut self, limit: Option<i32>) -> Vec<MinimalGen<F::Elem>> {
        let mut minimal = Vec::new();
        while let Some(d) = self.next_degree() {
            if limit.is_some_and(|l| d > l) {
                break;
            }
            if let Some(ids) = self.queue.remove(&d) {
                for id in ids {
                    if !self.pairs[id].alive {
                        continue;
                    }
                    self.pairs[id].alive = false;
                    let s = self.spoly(id);
                    let h = self.gb.normal_form(&s);
                    if !h.is_zero() {
                        self.insert(h);
                    }
                }
            }
            if let Some(gs) = self.gens.remove(&d) {
                for (tag, v) in gs {
                    let h = self.gb.normal_form(&v);
                    if !h.is_zero() {
                        minimal.push(MinimalGen {
                            tag,
                            degree: d,
                            remainder: h.clone(),
                        });
                        self.insert(h);
                    }
                }
            }
        }
        minimal
    }

    pub fn finish(mut self) -> Gb<F> {
        self.run(None);
        self.gb
    }

    /// Current (possibly degree-truncated) basis.
    pub fn basis(&self) -> &Gb<F> {
        &self.gb
    }

    fn spoly(&self, id: usize) -> Vector<F::Elem> {
        let p = &self.pairs[id];
        let f = &self.gb.field;
        let (a, b) = (&self.gb.elems[p.i], &self.gb.elems[p.j]);
        let ma = p.lcm.div_exact(&a.lead().unwrap().mono);
        let mb = p.lcm.div_exact(&b.lead().unwrap().mono);
        let x = a.mul_term(&ma, &f.one(), f);
        x.add_scaled(b, &f.neg(&f.one()), Some(&mb), f, &self.gb.order)
    }

    fn insert(&mut self, h: Vector<F::Elem>) {
        let k = self.gb.push(h);
        let lt = self.gb.elems[k].lead().unwrap().clone();
        let comp = lt.comp;
        let shift = self.gb.order.shifts[comp as usize];

        // chain criterion on existing pairs
        for p in self.pairs.iter_mut().filter(|p| p.alive && p.comp == comp) {
            if !lt.mono.divides(&p.lcm) {
                continue;
            }
            let li = self.gb.elems[p.i].lead().unwrap().mono.lcm(&lt.mono, &self.weights);
            let lj = self.gb.elems[p.j].lead().unwrap().mono.lcm(&lt.mono, &self.weights);
            if li != p.lcm && lj != p.lcm {
                p.alive = false;
            }
        }

        let mut cand: Vec<(usize, Monomial, bool)> = Vec::new();
        for &i in &self.gb.by_comp[comp as usize] {
            if i == k {
                continue;
            }
            let mi = &self.gb.elems[i].lead().unwrap().mono;
            let l = mi.lcm(&lt.mono, &self.weights);
            cand.push((i, l, mi.coprime(&lt.mono)));
        }
        // drop pairs whose lcm is strictly divisible by another new lcm
        let keep: Vec<bool> = cand
            .iter()
            .map(|(_, l, _)| {
                !cand
                    .iter()
                    .any(|(_, l2, _)| l2 != l && l2.divides(l))
            })
            .collect();
        let mut groups: BTreeMap<Vec<u16>, Vec<(usize, Monomial, bool)>> = BTreeMap::new();
        for (c, kp) in cand.into_iter().zip(keep) {
            if kp {
                groups.entry(c.1.exps().to_vec()).or_default().push(c);
            }
        }
        for (_, g) in groups {
            if self.product_criterion && g.iter().any(|c| c.2) {
                continue;
            }
            let (i, l, _) = g.into_iter().next().unwrap();
            let deg = l.degree() + shift;
            let id = self.pairs.len();
            self.pairs.push(Pair {
                i,
                j: k,
                lcm: l,
                comp,
                alive: true,
            });
            self.queue.entry(deg).or_default().push(id);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::vector::Term;

    fn poly(f: &Rationals, terms: &[(i64, [u16; 2])]) -> Vector<num_rational::BigRational> {
        let ord = ModuleOrder::new(MonomialOrder::Grevlex, vec![0]);
        Vector::from_terms(
            terms
                .iter()
                .map(|(c, e)| Term {
                    mono: Monomial::from_exps(e, &[1, 1]),
                    comp: 0,
                    coeff: f.from_i64(*c),
                })
                .collect(),
            f,
            &ord,
        )
    }

    #[test]
    fn small_ideal_basis() {
        let f = Rationals;
        let ord = ModuleOrder::new(MonomialOrder::Grevlex, vec![0]);
        let mut b = GbBuilder::new(f, ord, vec![1, 1]);
        b.add_generator(poly(&f, &[(1, [2, 0]), (1, [0, 2])]), 0);
        b.add_generator(poly(&f, &[(1, [1, 1])]), 1);
        let gb = b.finish().reduced();
        assert_eq!(gb.len(), 3);
        let y3 = poly(&f, &[(1, [0, 3])]);
        assert!(gb.elements().contains(&y3));
        let nf = gb.normal_form(&poly(&f, &[(1, [2, 0])]));
        assert_eq!(nf, poly(&f, &[(-1, [0, 2])]));
    }

    #[test]
    fn minimal_generators_flagged() {
        let f = PrimeField::new(32003).unwrap();
        let ord = ModuleOrder::new(MonomialOrder::Grevlex, vec![0]);
        let w = [1u32, 1];
        let m = |e: [u16; 2]| Vector::term(Monomial::from_exps(&e, &w), 0, 1u32);
        let mut b = GbBuilder::new(f, ord, w.to_vec());
        b.add_generator(m([1, 0]), 0);
        b.add_generator(m([2, 0]), 1);
        b.add_generator(m([0, 1]), 2);
        b.add_generator(m([1, 1]), 3);
        let mins: Vec<usize> = b.run(None).into_iter().map(|g| g.tag).collect();
        assert_eq!(mins, vec![0, 2]);
    }
}
