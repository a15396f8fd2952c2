//! Sparse elements of graded free modules. A polynomial is a vector supported
//! on component 0.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// A term order on a free module with generator degrees `shifts`.
///
/// Components in a smaller block dominate; inside a block, terms compare by
/// total degree, then by the monomial order, then by smaller component
/// index first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i32>,
    pub blocks: Vec<u8>,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder, shifts: Vec<i32>) -> Self {
        let blocks = vec![0; shifts.len()];
        ModuleOrder {
            mono,
            shifts,
            blocks,
        }
    }

    pub fn with_blocks(mono: MonomialOrder, shifts: Vec<i32>, blocks: Vec<u8>) -> Self {
        assert_eq!(shifts.len(), blocks.len());
        ModuleOrder {
            mono,
            shifts,
            blocks,
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        let (ai, bi) = (ac as usize, bc as usize);
        match self.blocks[bi].cmp(&self.blocks[ai]) {
            Ordering::Equal => {}
            o => return o,
        }
        let da = am.degree() + self.shifts[ai];
        let db = bm.degree() + self.shifts[bi];
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.mono.cmp(am, bm) {
            Ordering::Equal => {}
            o => return o,
        }
        bc.cmp(&ac)
    }

    pub fn term_degree(&self, m: &Monomial, comp: u32) -> i32 {
        m.degree() + self.shifts[comp as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: E,
}

/// Terms are kept sorted in decreasing order with respect to the order the
/// vector was built with; every operation takes that order explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<E> {
    terms: Vec<Term<E>>,
}

impl<E> Default for Vector<E> {
    fn default() -> Self {
        Vector { terms: Vec::new() }
    }
}

impl<E: Clone + PartialEq> Vector<E> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<E>> {
        self.terms
    }

    pub fn lead(&self) -> Option<&Term<E>> {
        self.terms.first()
    }

    pub fn term(mono: Monomial, comp: u32, coeff: E) -> Self {
        Vector {
            terms: vec![Term { mono, comp, coeff }],
        }
    }

    /// Wraps terms that are already sorted and combined.
    pub fn from_sorted(terms: Vec<Term<E>>) -> Self {
        Vector { terms }
    }

    pub fn from_terms<F: Field<Elem = E>>(mut terms: Vec<Term<E>>, f: &F, ord: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp(&b.mono, b.comp, &a.mono, a.comp));
        let mut out: Vec<Term<E>> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coeff = f.add(&last.coeff, &t.coeff);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !f.is_zero(&t.coeff));
        Vector { terms: out }
    }

    /// Total degree of the leading term.
    pub fn degree(&self, ord: &ModuleOrder) -> Option<i32> {
        self.lead().map(|t| ord.term_degree(&t.mono, t.comp))
    }

    pub fn is_homogeneous(&self, ord: &ModuleOrder) -> bool {
        match self.degree(ord) {
            None => true,
            Some(d) => self.terms.iter().all(|t| ord.term_degree(&t.mono, t.comp) == d),
        }
    }

    /// `self + c * m * other`, with `m = 1` when `None`.
    pub fn add_scaled<F: Field<Elem = E>>(
        &self,
        other: &Vector<E>,
        c: &E,
        m: Option<&Monomial>,
        f: &F,
        ord: &ModuleOrder,
    ) -> Vector<E> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        merge_into(&mut out, &self.terms, &other.terms, c, m, f, ord);
        Vector { terms: out }
    }

    /// In-place `self[from..] += c * m * other`; terms before `from` must
    /// dominate every term of `m * other`.
    pub(crate) fn add_scaled_tail<F: Field<Elem = E>>(
        &mut self,
        from: usize,
        other: &Vector<E>,
        c: &E,
        m: Option<&Monomial>,
        f: &F,
        ord: &ModuleOrder,
    ) {
        let tail = self.terms.split_off(from);
        merge_into(&mut self.terms, &tail, &other.terms, c, m, f, ord);
    }

    pub fn add<F: Field<Elem = E>>(&self, o: &Vector<E>, f: &F, ord: &ModuleOrder) -> Vector<E> {
        self.add_scaled(o, &f.one(), None, f, ord)
    }

    pub fn sub<F: Field<Elem = E>>(&self, o: &Vector<E>, f: &F, ord: &ModuleOrder) -> Vector<E> {
        self.add_scaled(o, &f.neg(&f.one()), None, f, ord)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Vector<E> {
        self.scale(&f.neg(&f.one()), f)
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Vector<E> {
        if f.is_zero(c) {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    comp: t.comp,
                    coeff: f.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// `c * m * self`; the order is unchanged by monomial multiplication.
    pub fn mul_term<F: Field<Elem = E>>(&self, m: &Monomial, c: &E, f: &F) -> Vector<E> {
        if f.is_zero(c) {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(m),
                    comp: t.comp,
                    coeff: f.mul(&t.coeff, c),
                })
                .collect(),
        }
    }

    /// `p * self` for a polynomial `p` (a vector on component 0).
    pub fn mul_poly<F: Field<Elem = E>>(&self, p: &Vector<E>, f: &F, ord: &ModuleOrder) -> Vector<E> {
        let mut terms = Vec::with_capacity(self.terms.len() * p.terms.len());
        for a in &p.terms {
            for b in &self.terms {
                terms.push(Term {
                    mono: a.mono.mul(&b.mono),
                    comp: b.comp,
                    coeff: f.mul(&a.coeff, &b.coeff),
                });
            }
        }
        Vector::from_terms(terms, f, ord)
    }

    /// Divides by the leading coefficient.
    pub fn make_monic<F: Field<Elem = E>>(&self, f: &F) -> Vector<E> {
        match self.lead() {
            None => Vector::zero(),
            Some(t) if f.is_one(&t.coeff) => self.clone(),
            Some(t) => self.scale(&f.inv(&t.coeff), f),
        }
    }

    /// The coefficient polynomial of component `i`, placed on component 0.
    pub fn component(&self, i: u32) -> Vector<E> {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp == i)
                .map(|t| Term {
                    mono: t.mono.clone(),
                    comp: 0,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Place a polynomial on component `i`. Relative order of terms is kept,
    /// which is correct for any module order.
    pub fn embed(poly: &Vector<E>, i: u32) -> Vector<E> {
        Vector {
            terms: poly
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    comp: i,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Renumber components and re-sort for the order of the new module.
    /// Terms mapped to `None` are dropped.
    pub fn reindex<F: Field<Elem = E>>(
        &self,
        map: impl Fn(u32) -> Option<u32>,
        f: &F,
        ord: &ModuleOrder,
    ) -> Vector<E> {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                map(t.comp).map(|c| Term {
                    mono: t.mono.clone(),
                    comp: c,
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        Vector::from_terms(terms, f, ord)
    }

    pub fn max_component(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }
}

#[allow(clippy::too_many_arguments)]
fn merge_into<F: Field>(
    out: &mut Vec<Term<F::Elem>>,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
    c: &F::Elem,
    m: Option<&Monomial>,
    f: &F,
    ord: &ModuleOrder,
) {
    if f.is_zero(c) {
        out.extend_from_slice(a);
        return;
    }
    let scaled = |t: &Term<F::Elem>| Term {
        mono: match m {
            Some(m) => t.mono.mul(m),
            None => t.mono.clone(),
        },
        comp: t.comp,
        coeff: f.mul(&t.coeff, c),
    };
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<Term<F::Elem>> = b.first().map(scaled);
    while i < a.len() {
        let Some(bt) = pending.as_ref() else { break };
        match ord.cmp(&a[i].mono, a[i].comp, &bt.mono, bt.comp) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let s = f.add(&a[i].coeff, &bt.coeff);
                if !f.is_zero(&s) {
                    out.push(Term {
                        mono: a[i].mono.clone(),
                        comp: a[i].comp,
                        coeff: s,
                    });
                }
                i += 1;
                j += 1;
                pending = b.get(j).map(scaled);
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(t) = pending {
        out.push(t);
        out.extend(b[j + 1..].iter().map(scaled));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn merge_cancels() {
        let f = PrimeField::new(7).unwrap();
        let w = [1u32, 1];
        let ord = ModuleOrder::new(MonomialOrder::Grevlex, vec![0]);
        let x = Monomial::from_exps(&[1, 0], &w);
        let y = Monomial::from_exps(&[0, 1], &w);
        let p = Vector::from_terms(
            vec![
                Term { mono: x.clone(), comp: 0, coeff: 1 },
                Term { mono: y.clone(), comp: 0, coeff: 2 },
            ],
            &f,
            &ord,
        );
        let q = p.sub(&p, &f, &ord);
        assert!(q.is_zero());
        let r = p.add_scaled(&p, &3, Some(&x), &f, &ord);
        assert_eq!(r.len(), 4);
        assert_eq!(r.lead().unwrap().mono.exps(), &[2, 0]);
    }
}
