//! Finitely presented graded modules, kernels and lifts through maps, and
//! minimal presentations.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Gb, GbBuilder};
use crate::hilbert::HilbertData;
use crate::matrix::{free_order, reduce_vector, Matrix};
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};
use crate::vector::{ModuleOrder, Term, Vector};

pub type Elem<F> = Vector<<F as Field>::Elem>;

/// The relations of the ring on every component of a free module.
pub fn ring_background<F: Field>(ring: &Ring<F>, rank: usize) -> Vec<Elem<F>> {
    let mut out = Vec::with_capacity(rank * ring.gb().len());
    for c in 0..rank {
        for g in ring.gb().elements() {
            out.push(Vector::embed(g, c as u32));
        }
    }
    out
}

/// Minimal generators of the submodule of `A^degs` spanned by `elems`,
/// modulo the submodule with Gröbner basis `base` (or just the ring
/// relations when `None`).
pub fn minimal_generators<F: Field>(
    ring: &Ring<F>,
    degs: &[i32],
    base: Option<&Gb<F>>,
    elems: &[Elem<F>],
) -> Vec<(usize, Elem<F>)> {
    let ord = free_order(ring, degs);
    let mut b = GbBuilder::new(ring.field().clone(), ord, ring.weights().to_vec());
    match base {
        Some(gb) => b.add_background(gb.elements().iter().cloned()),
        None => b.add_background(ring_background(ring, degs.len())),
    }
    for (i, e) in elems.iter().enumerate() {
        b.add_generator(e.clone(), i);
    }
    b.run(None).into_iter().map(|g| (g.tag, g.remainder)).collect()
}

/// Gröbner basis of `span(elems) + I * A^degs`.
pub fn submodule_gb<F: Field>(ring: &Ring<F>, degs: &[i32], elems: &[Elem<F>]) -> Gb<F> {
    let ord = free_order(ring, degs);
    let mut b = GbBuilder::new(ring.field().clone(), ord, ring.weights().to_vec());
    b.add_background(ring_background(ring, degs.len()));
    for (i, e) in elems.iter().enumerate() {
        b.add_generator(e.clone(), i);
    }
    b.finish()
}

/// Solves linear systems `f(x) = y` modulo relations of the target, and
/// computes the kernel, from one elimination Gröbner basis.
pub struct MapSolver<F: Field> {
    ring: Arc<Ring<F>>,
    source: Vec<i32>,
    r: usize,
    gb: Gb<F>,
    n_background: usize,
}

impl<F: Field> MapSolver<F> {
    pub fn new(ring: &Arc<Ring<F>>, f: &Matrix<F>, target_rels: &[Elem<F>]) -> Self {
        let r = f.nrows();
        let s = f.ncols();
        let mut shifts = f.target.clone();
        shifts.extend_from_slice(&f.source);
        let mut blocks = vec![0u8; r];
        blocks.extend(std::iter::repeat_n(1u8, s));
        let ord = ModuleOrder::with_blocks(ring.mono_order(), shifts, blocks);
        let fld = ring.field();
        let mut b = GbBuilder::new(fld.clone(), ord.clone(), ring.weights().to_vec());
        let bg = ring_background(ring, r + s);
        let n_background = bg.len();
        b.add_background(bg);
        let one = Monomial::one(ring.nvars());
        for (j, c) in f.cols().iter().enumerate() {
            let mut terms: Vec<Term<F::Elem>> = c.terms().to_vec();
            terms.push(Term {
                mono: one.clone(),
                comp: (r + j) as u32,
                coeff: fld.one(),
            });
            b.add_generator(Vector::from_terms(terms, fld, &ord), j);
        }
        for (k, rel) in target_rels.iter().enumerate() {
            let v = Vector::from_terms(rel.terms().to_vec(), fld, &ord);
            b.add_generator(v, s + k);
        }
        MapSolver {
            ring: ring.clone(),
            source: f.source.clone(),
            r,
            gb: b.finish(),
            n_background,
        }
    }

    /// Generators (not necessarily minimal) of the kernel.
    pub fn kernel_generators(&self) -> Vec<Elem<F>> {
        let r = self.r as u32;
        let sord = free_order(&self.ring, &self.source);
        self.gb.elements()[self.n_background..]
            .iter()
            .filter(|v| v.lead().unwrap().comp >= r)
            .map(|v| v.reindex(|c| Some(c - r), self.ring.field(), &sord))
            .collect()
    }

    /// Minimal generators of the kernel, sorted by degree.
    pub fn kernel(&self) -> Vec<Elem<F>> {
        let gens = self.kernel_generators();
        minimal_generators(&self.ring, &self.source, None, &gens)
            .into_iter()
            .map(|(_, v)| v)
            .collect()
    }

    /// Some `x` with `f(x) = y` modulo the target relations.
    pub fn lift(&self, y: &Elem<F>) -> Option<Elem<F>> {
        if y.is_zero() {
            return Some(Vector::zero());
        }
        let fld = self.ring.field();
        let v = Vector::from_terms(y.terms().to_vec(), fld, self.gb.order());
        let nf = self.gb.normal_form(&v);
        let r = self.r as u32;
        if nf.terms().iter().any(|t| t.comp < r) {
            return None;
        }
        let sord = free_order(&self.ring, &self.source);
        Some(nf.reindex(|c| Some(c - r), fld, &sord).neg(fld))
    }
}

/// Kernel of `f` viewed as a map into `target / target_rels`.
pub fn kernel<F: Field>(ring: &Arc<Ring<F>>, f: &Matrix<F>, target_rels: &[Elem<F>]) -> Vec<Elem<F>> {
    if f.ncols() == 0 {
        return Vec::new();
    }
    MapSolver::new(ring, f, target_rels).kernel()
}

/// The kernel as a map into the source of `f`.
pub fn syzygy<F: Field>(ring: &Arc<Ring<F>>, f: &Matrix<F>) -> Matrix<F> {
    let k = kernel(ring, f, &[]);
    let ord = free_order(ring, &f.source);
    let degs: Vec<i32> = k.iter().map(|v| v.degree(&ord).unwrap()).collect();
    Matrix::from_cols_unchecked(degs, f.source.clone(), k)
}

/// Cokernel of a matrix between graded free modules over `ring`.
#[derive(Clone)]
pub struct FpModule<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<i32>,
    rels: Vec<Elem<F>>,
    order: ModuleOrder,
    gb: OnceLock<Arc<Gb<F>>>,
}

impl<F: Field> fmt::Debug for FpModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("gens", &self.gens)
            .field("rels", &self.rels.len())
            .finish()
    }
}

impl<F: Field> PartialEq for FpModule<F> {
    fn eq(&self, o: &Self) -> bool {
        self.gens == o.gens && self.rels == o.rels
    }
}

/// Result of minimizing a presentation.
#[derive(Clone, Debug)]
pub struct Minimized<F: Field> {
    pub module: FpModule<F>,
    /// Old generator indices that survive, in order; new generator `k` is old `keep[k]`.
    pub keep: Vec<usize>,
    /// Image of every old generator in the new module.
    pub to_new: Vec<Elem<F>>,
}

impl<F: Field> FpModule<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<i32>, rels: Vec<Elem<F>>) -> Result<Self> {
        let order = free_order(ring, &gens);
        let mut out = Vec::with_capacity(rels.len());
        for (k, r) in rels.into_iter().enumerate() {
            if let Some(m) = r.max_component() {
                if m as usize >= gens.len() {
                    return Err(Error::InvalidInput(format!("relation {k} leaves the module")));
                }
            }
            let r = reduce_vector(ring, &Vector::from_terms(r.into_terms(), ring.field(), &order), &order);
            if !r.is_homogeneous(&order) {
                return Err(Error::NotHomogeneous(format!("relation {k}")));
            }
            if !r.is_zero() {
                out.push(r);
            }
        }
        Ok(FpModule {
            ring: ring.clone(),
            gens,
            rels: out,
            order,
            gb: OnceLock::new(),
        })
    }

    pub(crate) fn new_unchecked(ring: &Arc<Ring<F>>, gens: Vec<i32>, rels: Vec<Elem<F>>) -> Self {
        let order = free_order(ring, &gens);
        FpModule {
            ring: ring.clone(),
            gens,
            rels,
            order,
            gb: OnceLock::new(),
        }
    }

    pub fn free(ring: &Arc<Ring<F>>, gens: Vec<i32>) -> Self {
        Self::new_unchecked(ring, gens, Vec::new())
    }

    /// The ring itself as a module.
    pub fn ring_module(ring: &Arc<Ring<F>>) -> Self {
        Self::free(ring, vec![0])
    }

    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `A / J` for a homogeneous ideal `J`.
    pub fn cyclic(ring: &Arc<Ring<F>>, ideal: &[Poly<F>]) -> Result<Self> {
        let rels = ideal.to_vec();
        for (i, p) in rels.iter().enumerate() {
            if !ring.is_homogeneous(p) {
                return Err(Error::NotHomogeneous(format!("ideal generator #{i}: {}", ring.format(p))));
            }
        }
        Self::new(ring, vec![0], rels)
    }

    /// The residue field `A / m`.
    pub fn residue_field(ring: &Arc<Ring<F>>) -> Self {
        Self::cyclic(ring, &ring.vars()).expect("variables are homogeneous")
    }

    /// The ideal `J` as a module (minimally generated, presented by syzygies).
    pub fn ideal(ring: &Arc<Ring<F>>, gens: &[Poly<F>]) -> Result<Self> {
        let deg0 = [0];
        let gens: Vec<Elem<F>> = gens.iter().filter(|p| !ring.nf(p).is_zero()).cloned().collect();
        if gens.iter().any(|g| !ring.is_homogeneous(g)) {
            return Err(Error::NotHomogeneous("ideal generator".into()));
        }
        let sub = Subquotient::submodule(&FpModule::free(ring, deg0.to_vec()), &gens);
        Ok(sub.module)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }
    pub fn gens(&self) -> &[i32] {
        &self.gens
    }
    pub fn ngens(&self) -> usize {
        self.gens.len()
    }
    pub fn rels(&self) -> &[Elem<F>] {
        &self.rels
    }
    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }
    pub fn is_free(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn presentation(&self) -> Matrix<F> {
        let degs = self.rels.iter().map(|r| r.degree(&self.order).unwrap()).collect();
        Matrix::from_cols_unchecked(degs, self.gens.clone(), self.rels.clone())
    }

    /// Gröbner basis of the relations plus `I * F`; computed once.
    pub fn gb(&self) -> &Arc<Gb<F>> {
        self.gb
            .get_or_init(|| Arc::new(submodule_gb(&self.ring, &self.gens, &self.rels)))
    }

    pub fn normal_form(&self, v: &Elem<F>) -> Elem<F> {
        self.gb().normal_form(v)
    }

    pub fn is_zero_element(&self, v: &Elem<F>) -> bool {
        self.gb().contains(v)
    }

    pub fn hilbert(&self) -> HilbertData {
        HilbertData::from_gb(self.gb(), self.ring.weights())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty() || self.hilbert().is_zero()
    }

    pub fn dim(&self) -> Option<usize> {
        self.hilbert().dim()
    }

    pub fn length(&self) -> Option<u64> {
        self.hilbert().length()
    }

    /// `M(k)`: the degree-`d` piece of `M(k)` is the degree-`d+k` piece of `M`.
    pub fn twist(&self, k: i32) -> Self {
        let gens = self.gens.iter().map(|d| d - k).collect();
        Self::new_unchecked(&self.ring, gens, self.rels.clone())
    }

    pub fn direct_sum(parts: &[&FpModule<F>]) -> Self {
        let ring = parts[0].ring.clone();
        let mut gens = Vec::new();
        let mut rels = Vec::new();
        let mut off = 0u32;
        for p in parts {
            gens.extend_from_slice(&p.gens);
            for r in &p.rels {
                let shifted = r.terms().iter().map(|t| Term {
                    mono: t.mono.clone(),
                    comp: t.comp + off,
                    coeff: t.coeff.clone(),
                });
                rels.push(Vector::from_sorted(shifted.collect()));
            }
            off += p.gens.len() as u32;
        }
        // relation terms keep their relative order under a uniform shift of
        // components inside one summand, but summands interleave in the new
        // order, so re-sort
        let order = free_order(&ring, &gens);
        let rels = rels
            .into_iter()
            .map(|r| Vector::from_terms(r.into_terms(), ring.field(), &order))
            .collect();
        Self::new_unchecked(&ring, gens, rels)
    }

    /// Minimal presentation by unit pivoting and minimal relations.
    pub fn minimize(&self) -> Minimized<F> {
        let ring = &self.ring;
        let fld = ring.field();
        let mut gens = self.gens.clone();
        let mut ids: Vec<usize> = (0..gens.len()).collect();
        let mut order = self.order.clone();
        let mut rels: Vec<Elem<F>> = minimal_generators(ring, &gens, None, &self.rels)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let one = Monomial::one(ring.nvars());
        // images of old generators, in current indexing
        let mut images: Vec<Elem<F>> = (0..gens.len())
            .map(|i| Vector::term(one.clone(), i as u32, fld.one()))
            .collect();
        loop {
            // lowest-degree relation with a unit entry; first such row
            let mut pick: Option<(i32, usize, usize)> = None;
            for (j, r) in rels.iter().enumerate() {
                let d = r.degree(&order).unwrap();
                for t in r.terms() {
                    if t.mono.is_one() {
                        let cand = (d, t.comp as usize, j);
                        if pick.is_none_or(|p| cand < p) {
                            pick = Some(cand);
                        }
                    }
                }
            }
            let Some((_, row, j)) = pick else { break };
            let rel = rels.remove(j);
            let c = rel
                .terms()
                .iter()
                .find(|t| t.comp as usize == row && t.mono.is_one())
                .unwrap()
                .coeff
                .clone();
            // e_row = -(1/c) (rel - c e_row)
            let unit = Vector::term(one.clone(), row as u32, c.clone());
            let w = rel.sub(&unit, fld, &order).scale(&fld.neg(&fld.inv(&c)), fld);
            let subst = |v: &Elem<F>, order: &ModuleOrder| -> Elem<F> {
                let p = v.component(row as u32);
                if p.is_zero() {
                    return v.clone();
                }
                let rest = v.reindex(|k| (k != row as u32).then_some(k), fld, order);
                let add = w.mul_poly(&p, fld, order);
                reduce_vector(ring, &rest.add(&add, fld, order), order)
            };
            rels = rels.iter().map(|r| subst(r, &order)).collect();
            images = images.iter().map(|v| subst(v, &order)).collect();
            // drop the generator and renumber
            gens.remove(row);
            ids.remove(row);
            let new_order = free_order(ring, &gens);
            let renum = |k: u32| -> Option<u32> {
                match (k as usize).cmp(&row) {
                    std::cmp::Ordering::Less => Some(k),
                    std::cmp::Ordering::Greater => Some(k - 1),
                    std::cmp::Ordering::Equal => None,
                }
            };
            rels = rels
                .iter()
                .map(|r| r.reindex(renum, fld, &new_order))
                .filter(|r| !r.is_zero())
                .collect();
            images = images.iter().map(|v| v.reindex(renum, fld, &new_order)).collect();
            order = new_order;
        }
        let rels: Vec<Elem<F>> = minimal_generators(ring, &gens, None, &rels)
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let module = Self::new_unchecked(ring, gens, rels);
        let to_new = images.iter().map(|v| module.normal_form(v)).collect();
        Minimized {
            module,
            keep: ids,
            to_new,
        }
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.minimize().module.ngens()
    }

    /// Multiplication by `p` as a matrix `A^gens(-deg p) -> A^gens`.
    pub fn multiplication(&self, p: &Poly<F>) -> Matrix<F> {
        Matrix::scalar(&self.ring, &self.gens, p)
    }

    /// Whether `p * M = 0`.
    pub fn annihilated_by(&self, p: &Poly<F>) -> bool {
        let m = self.multiplication(p);
        m.cols().iter().all(|c| self.is_zero_element(c))
    }

    /// Graded pieces in `lo..=hi`.
    pub fn hilbert_values(&self, lo: i32, hi: i32) -> Vec<i64> {
        self.hilbert().values(lo, hi)
    }

    /// Lowest generator degree, if any.
    pub fn min_degree(&self) -> Option<i32> {
        self.gens.iter().min().copied()
    }
}

/// A subquotient `U / (U ∩ B)` of a presented module, where `U` is spanned
/// by generator representatives and `B` is the submodule of denominators.
#[derive(Clone, Debug)]
pub struct Subquotient<F: Field> {
    /// Minimal presentation of the subquotient.
    pub module: FpModule<F>,
    /// Representatives of the generators in the ambient free module.
    pub reps: Vec<Elem<F>>,
    /// Generator degrees of the ambient free module.
    pub ambient: Vec<i32>,
    denominators: Vec<Elem<F>>,
    den_gb: OnceLock<Arc<Gb<F>>>,
}

impl<F: Field> Subquotient<F> {
    /// `(span(numer) + D) / D` with `D = span(denominators) + I * F`.
    pub fn new(ring: &Arc<Ring<F>>, ambient: &[i32], numer: &[Elem<F>], denominators: Vec<Elem<F>>) -> Self {
        let ord = free_order(ring, ambient);
        let den_gb = Arc::new(submodule_gb(ring, ambient, &denominators));
        // drop numerators that are redundant modulo D
        let mins = minimal_generators(ring, ambient, Some(&den_gb), numer);
        let chosen: Vec<Elem<F>> = mins.into_iter().map(|(i, _)| numer[i].clone()).collect();
        let degs: Vec<i32> = chosen.iter().map(|v| v.degree(&ord).unwrap()).collect();
        let z = Matrix::from_cols_unchecked(degs.clone(), ambient.to_vec(), chosen.clone());
        let rels = kernel(ring, &z, &denominators);
        let raw = FpModule::new_unchecked(ring, degs, rels);
        let min = raw.minimize();
        let reps = min.keep.iter().map(|&k| chosen[k].clone()).collect();
        let cell = OnceLock::new();
        let _ = cell.set(den_gb);
        Subquotient {
            module: min.module,
            reps,
            ambient: ambient.to_vec(),
            denominators,
            den_gb: cell,
        }
    }

    /// The submodule of `x` spanned by `elems`.
    pub fn submodule(x: &FpModule<F>, elems: &[Elem<F>]) -> Self {
        Self::new(x.ring(), x.gens(), elems, x.rels().to_vec())
    }

    pub fn denominators(&self) -> &[Elem<F>] {
        &self.denominators
    }

    fn den_gb(&self) -> &Arc<Gb<F>> {
        self.den_gb.get_or_init(|| {
            Arc::new(submodule_gb(self.module.ring(), &self.ambient, &self.denominators))
        })
    }

    /// Whether an ambient element lies in the denominator submodule.
    pub fn is_zero_class(&self, v: &Elem<F>) -> bool {
        self.den_gb().contains(v)
    }

    /// Whether `p` kills every generator class.
    pub fn annihilated_by(&self, p: &Poly<F>) -> bool {
        let ring = self.module.ring();
        let ord = free_order(ring, &self.ambient);
        self.reps.iter().all(|z| {
            let pz = reduce_vector(ring, &z.mul_poly(p, ring.field(), &ord), &ord);
            self.is_zero_class(&pz)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<Ring<Rationals>> {
        Arc::new(Ring::from_strs(Rationals, vars, rels).unwrap())
    }

    fn row(r: &Ring<Rationals>, src: Vec<i32>, entries: &[&str]) -> Matrix<Rationals> {
        let e: Vec<Poly<Rationals>> = entries.iter().map(|s| r.parse(s).unwrap()).collect();
        Matrix::from_entries(r, src, vec![0], &[e]).unwrap()
    }

    #[test]
    fn syzygy_examples() {
        let a = ring(&["x"], &[]);
        assert_eq!(syzygy(&a, &row(&a, vec![1], &["x"])).ncols(), 0);

        let a = ring(&["x", "y"], &["x*y", "y^2"]);
        let s = syzygy(&a, &row(&a, vec![1], &["y"]));
        let mut entries: Vec<String> = (0..s.ncols()).map(|j| a.format(&s.entry(0, j))).collect();
        entries.sort();
        assert_eq!(entries, vec!["x", "y"]);

        let a = ring(&["x", "y"], &[]);
        let s = syzygy(&a, &row(&a, vec![1, 1], &["x", "y"]));
        assert_eq!(s.ncols(), 1);
        let (p, q) = (a.format(&s.entry(0, 0)), a.format(&s.entry(1, 0)));
        assert!((p == "-y" && q == "x") || (p == "y" && q == "-x"));
    }

    #[test]
    fn lift_and_kernel() {
        let a = ring(&["x", "y"], &[]);
        let f = row(&a, vec![1, 1], &["x", "y"]);
        let sol = MapSolver::new(&a, &f, &[]);
        let y = a.parse("x^2+x*y").unwrap();
        let x = sol.lift(&y).unwrap();
        assert_eq!(f.apply(&a, &x), y);
        assert!(sol.lift(&a.one()).is_none());
    }

    #[test]
    fn minimize_drops_units() {
        let a = ring(&["x", "y"], &[]);
        let ord = free_order(&a, &[0, 1]);
        // gens e0 (deg 0), e1 (deg 1); relation x e0 - e1 kills e1
        let rel = Vector::from_terms(
            vec![
                Term {
                    mono: Monomial::var(0, a.weights()),
                    comp: 0,
                    coeff: Rationals.one(),
                },
                Term {
                    mono: Monomial::one(2),
                    comp: 1,
                    coeff: Rationals.from_i64(-1),
                },
            ],
            &Rationals,
            &ord,
        );
        let y_e0 = Vector::term(Monomial::var(1, a.weights()), 0, Rationals.one());
        let m = FpModule::new(&a, vec![0, 1], vec![rel, y_e0]).unwrap();
        let min = m.minimize();
        assert_eq!(min.module.gens(), &[0]);
        assert_eq!(min.keep, vec![0]);
        assert_eq!(min.module.rels().len(), 1);
        assert_eq!(m.hilbert().values(0, 4), min.module.hilbert().values(0, 4));
        // e1 maps to x * e0
        assert_eq!(a.format(&min.to_new[1].component(0)), "x");
    }

    #[test]
    fn residue_field_length() {
        let a = ring(&["x", "y"], &["x*y"]);
        let k = FpModule::residue_field(&a);
        assert_eq!(k.length(), Some(1));
        assert_eq!(FpModule::ring_module(&a).dim(), Some(1));
        let j = FpModule::ideal(&a, &[a.parse("x").unwrap(), a.parse("y").unwrap()]).unwrap();
        assert_eq!(j.ngens(), 2);
        assert_eq!(j.hilbert().values(0, 3), vec![0, 2, 2, 2]);
    }
}
