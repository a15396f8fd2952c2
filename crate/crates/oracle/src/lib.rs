//! Independent reference values for the homological computations of
//! `koszul-core`, by dense linear algebra on graded pieces.
//!
//! Nothing here uses Gröbner bases: every graded piece is a quotient of a
//! space of monomials by the span of the relations times monomials, and
//! every (co)homology dimension is a rank computation in one degree.

mod alg;
mod cx;
mod lin;

use std::rc::Rc;

use koszul_core::module::FpModule;
use koszul_core::{Poly, PrimeField, Ring};

use crate::alg::{OMod, OPoly, ORing};
use crate::cx::{hom_tot, resolve, tensor_tot, Cx};
use crate::lin::Fp;

/// A module as the oracle sees it.
#[derive(Clone)]
pub struct Module(Rc<OMod>);

impl Module {
    /// `dim_k M_t` for `t` in `lo..=hi`.
    pub fn hilbert(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|t| self.0.dim(t)).collect()
    }

    /// The last nonzero degree; None when the length is infinite.
    pub fn top(&self) -> Option<Option<i32>> {
        self.0.top()
    }
}

/// Entry point over one ring.
pub struct Oracle {
    ring: Rc<ORing>,
}

impl Oracle {
    pub fn new(ring: &Ring<PrimeField>) -> Self {
        let f = Fp {
            p: ring.field().modulus() as u64,
        };
        let rels = ring.relations().iter().map(|r| convert(f, r)).collect();
        Oracle {
            ring: Rc::new(ORing::new(f, ring.weights().to_vec(), rels)),
        }
    }

    fn f(&self) -> Fp {
        self.ring.f
    }

    pub fn module(&self, m: &FpModule<PrimeField>) -> Module {
        let f = self.f();
        let rels = m
            .rels()
            .iter()
            .map(|r| {
                let mut per: Vec<Vec<(Vec<u16>, u64)>> = vec![Vec::new(); m.ngens()];
                for t in r.terms() {
                    per[t.comp as usize].push((t.mono.exps().to_vec(), t.coeff as u64));
                }
                per.into_iter()
                    .enumerate()
                    .map(|(c, ts)| (c, OPoly::from_terms(f, ts)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect()
            })
            .collect();
        Module(Rc::new(OMod::new(self.ring.clone(), m.gens().to_vec(), rels)))
    }

    fn ring_module(&self) -> Rc<OMod> {
        Rc::new(OMod::free(self.ring.clone(), vec![0]))
    }

    fn elems(&self, u: &[Poly<PrimeField>]) -> Vec<OPoly> {
        u.iter().map(|p| convert(self.f(), p)).collect()
    }

    /// `dim H_i(u; M)_t`, rows `i = 0..=nmax`, columns the window.
    pub fn koszul_homology(&self, u: &[Poly<PrimeField>], m: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.tensor(&self.ring_module(), &self.elems(u), &m.0, nmax, window)
    }

    /// `dim H^i(u; M)_t`.
    pub fn koszul_cohomology(&self, u: &[Poly<PrimeField>], m: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.hom(&self.ring_module(), &self.elems(u), &m.0, nmax, window)
    }

    /// `dim Ext^i(M, N)_t`.
    pub fn ext(&self, m: &Module, n: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.hom(&m.0, &[], &n.0, nmax, window)
    }

    /// `dim Tor_i(M, N)_t`.
    pub fn tor(&self, m: &Module, n: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.tensor(&m.0, &[], &n.0, nmax, window)
    }

    /// `dim V^i(u, N, M)_t`, from `Tot Hom(F(N), K^•(u, M))`.
    pub fn v(&self, u: &[Poly<PrimeField>], n: &Module, m: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.hom(&n.0, &self.elems(u), &m.0, nmax, window)
    }

    /// `dim U^i(u, M, N)_t`, from `Tot Hom(F(M), K^•(u, N))`, which is
    /// `Hom(K(u, A) ⊗ F(M), N)` by adjunction.
    pub fn u(&self, u: &[Poly<PrimeField>], m: &Module, n: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.hom(&m.0, &self.elems(u), &n.0, nmax, window)
    }

    /// `dim W_i(u, M, N)_t`, from `Tot(F(M) ⊗ K(u, N))`.
    pub fn w(&self, u: &[Poly<PrimeField>], m: &Module, n: &Module, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        self.tensor(&m.0, &self.elems(u), &n.0, nmax, window)
    }

    /// Generator degrees past which the resolution of `r` does not matter
    /// for a Hom into `base`. Exact for finite length; for infinite length
    /// generators of `F_i` are assumed to sit below `g + (i + 1) * r`.
    fn hom_cap(&self, r: &OMod, base: &OMod, steps: usize, window: (i32, i32)) -> i32 {
        match base.top() {
            Some(Some(top)) => top - window.0,
            Some(None) => window.0,
            None => {
                let maxgen = r.gens.iter().copied().max().unwrap_or(0);
                let step = self
                    .ring
                    .rels
                    .iter()
                    .map(|(d, _)| *d)
                    .chain(r.rels.iter().map(|(d, _)| d - maxgen))
                    .chain(self.ring.w.iter().map(|&w| w as i32))
                    .max()
                    .unwrap_or(1)
                    .max(1);
                window.1.max(maxgen + (steps as i32 + 1) * step + 2)
            }
        }
    }

    fn hom(&self, r: &Rc<OMod>, u: &[OPoly], base: &Rc<OMod>, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        let steps = nmax + 1;
        let cap = self.hom_cap(r, base, steps, window);
        let res = resolve(r, steps, cap);
        read(&hom_tot(&res, u, base.clone(), steps), nmax, window)
    }

    fn tensor(&self, r: &Rc<OMod>, u: &[OPoly], base: &Rc<OMod>, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
        let steps = nmax + 1;
        let low = base.min_gen().unwrap_or(window.1);
        let res = resolve(r, steps, window.1 - low);
        read(&tensor_tot(&res, u, base.clone(), steps), nmax, window)
    }
}

fn read(c: &Cx, nmax: usize, window: (i32, i32)) -> Vec<Vec<usize>> {
    (0..=nmax as i32)
        .map(|i| (window.0..=window.1).map(|t| c.homology(i, t)).collect())
        .collect()
}

fn convert(f: Fp, p: &Poly<PrimeField>) -> OPoly {
    OPoly::from_terms(f, p.terms().iter().map(|t| (t.mono.exps().to_vec(), t.coeff as u64)))
}
