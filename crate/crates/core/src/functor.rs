//! `Hom(F, -)` and `- ⊗ X` for free `F`, and tensor products of presented
//! modules, as explicit presentations and block matrices.
//!
//! Generators of `Hom(F, X)` and `F ⊗ X` are indexed `(g, e)` with the free
//! generator `g` outermost.

use std::sync::Arc;

use crate::field::Field;
use crate::matrix::{BlockBuilder, Matrix};
use crate::module::{Elem, FpModule};
use crate::ring::Ring;
use crate::vector::{Term, Vector};

fn copy_rels<F: Field>(x: &FpModule<F>, blocks: usize) -> Vec<Elem<F>> {
    let n = x.ngens() as u32;
    let mut rels = Vec::with_capacity(blocks * x.rels().len());
    for b in 0..blocks as u32 {
        for r in x.rels() {
            rels.push(Vector::from_sorted(
                r.terms()
                    .iter()
                    .map(|t| Term {
                        mono: t.mono.clone(),
                        comp: t.comp + b * n,
                        coeff: t.coeff.clone(),
                    })
                    .collect(),
            ));
        }
    }
    rels
}

fn resort<F: Field>(ring: &Arc<Ring<F>>, gens: Vec<i32>, rels: Vec<Elem<F>>) -> FpModule<F> {
    let ord = crate::matrix::free_order(ring, &gens);
    let rels = rels
        .into_iter()
        .map(|r| Vector::from_terms(r.into_terms(), ring.field(), &ord))
        .collect();
    FpModule::new(ring, gens, rels).expect("block relations are homogeneous")
}

/// `Hom(⊕ A(-a_g), X) = ⊕ X(a_g)`.
pub fn hom_free<F: Field>(free: &[i32], x: &FpModule<F>) -> FpModule<F> {
    let gens = free
        .iter()
        .flat_map(|a| x.gens().iter().map(move |e| e - a))
        .collect();
    resort(x.ring(), gens, copy_rels(x, free.len()))
}

/// `⊕ A(-a_g) ⊗ X = ⊕ X(-a_g)`.
pub fn tensor_free<F: Field>(free: &[i32], x: &FpModule<F>) -> FpModule<F> {
    let gens = free
        .iter()
        .flat_map(|a| x.gens().iter().map(move |e| e + a))
        .collect();
    resort(x.ring(), gens, copy_rels(x, free.len()))
}

/// `Hom(phi, X): Hom(F, X) -> Hom(F', X)` for `phi: F' -> F`.
pub fn hom_pre<F: Field>(phi: &Matrix<F>, x: &FpModule<F>) -> Matrix<F> {
    let ring = x.ring();
    let n = x.ngens();
    let src = hom_free(&phi.target, x);
    let tgt = hom_free(&phi.source, x);
    let mut b = BlockBuilder::new(ring, src.gens().to_vec(), tgt.gens().to_vec());
    for gp in 0..phi.ncols() {
        for t in phi.col(gp).terms() {
            let g = t.comp as usize;
            let p = Vector::from_sorted(vec![Term {
                mono: t.mono.clone(),
                comp: 0,
                coeff: t.coeff.clone(),
            }]);
            for e in 0..n {
                b.place_entry(gp * n + e, g * n + e, &p, false);
            }
        }
    }
    b.finish()
}

/// `Hom(F, f): Hom(F, X) -> Hom(F, Y)` for `f: X -> Y` given on generators.
pub fn hom_post<F: Field>(ring: &Ring<F>, free: &[i32], f: &Matrix<F>) -> Matrix<F> {
    let (n, m) = (f.ncols(), f.nrows());
    let src: Vec<i32> = free.iter().flat_map(|a| f.source.iter().map(move |e| e - a)).collect();
    let tgt: Vec<i32> = free.iter().flat_map(|a| f.target.iter().map(move |e| e - a)).collect();
    let mut b = BlockBuilder::new(ring, src, tgt);
    for g in 0..free.len() {
        b.place(g * m, g * n, &f.twist(free[g]), false);
    }
    b.finish()
}

/// `phi ⊗ X: F' ⊗ X -> F ⊗ X`.
pub fn tensor_pre<F: Field>(phi: &Matrix<F>, x: &FpModule<F>) -> Matrix<F> {
    let ring = x.ring();
    let n = x.ngens();
    let src = tensor_free(&phi.source, x);
    let tgt = tensor_free(&phi.target, x);
    let mut b = BlockBuilder::new(ring, src.gens().to_vec(), tgt.gens().to_vec());
    for gp in 0..phi.ncols() {
        for t in phi.col(gp).terms() {
            let g = t.comp as usize;
            let p = Vector::from_sorted(vec![Term {
                mono: t.mono.clone(),
                comp: 0,
                coeff: t.coeff.clone(),
            }]);
            for e in 0..n {
                b.place_entry(g * n + e, gp * n + e, &p, false);
            }
        }
    }
    b.finish()
}

/// `F ⊗ f: F ⊗ X -> F ⊗ Y`.
pub fn tensor_post<F: Field>(ring: &Ring<F>, free: &[i32], f: &Matrix<F>) -> Matrix<F> {
    let (n, m) = (f.ncols(), f.nrows());
    let src: Vec<i32> = free.iter().flat_map(|a| f.source.iter().map(move |e| e + a)).collect();
    let tgt: Vec<i32> = free.iter().flat_map(|a| f.target.iter().map(move |e| e + a)).collect();
    let mut b = BlockBuilder::new(ring, src, tgt);
    for g in 0..free.len() {
        b.place(g * m, g * n, &f.twist(-free[g]), false);
    }
    b.finish()
}

/// `M ⊗ N` for presented modules: generators `(g, e)` with `g` from `M`.
pub fn tensor_modules<F: Field>(m: &FpModule<F>, n: &FpModule<F>) -> FpModule<F> {
    let ring = m.ring();
    let mut base = tensor_free(m.gens(), n);
    let k = n.ngens() as u32;
    let mut rels = base.rels().to_vec();
    // relations of M tensored with each generator of N
    for r in m.rels() {
        for e in 0..k {
            rels.push(Vector::from_sorted(
                r.terms()
                    .iter()
                    .map(|t| Term {
                        mono: t.mono.clone(),
                        comp: t.comp * k + e,
                        coeff: t.coeff.clone(),
                    })
                    .collect(),
            ));
        }
    }
    let gens = base.gens().to_vec();
    base = resort(ring, gens, rels);
    base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn tensor_with_residue_field() {
        let a = Arc::new(Ring::from_strs(Rationals, &["x", "y"], &[]).unwrap());
        let k = FpModule::residue_field(&a);
        let m = FpModule::cyclic(&a, &[a.parse("x^2").unwrap()]).unwrap();
        let t = tensor_modules(&m, &k);
        assert_eq!(t.length(), Some(1));
        let h = hom_free(&[1, 2], &k);
        assert_eq!(h.gens(), &[-1, -2]);
    }
}
