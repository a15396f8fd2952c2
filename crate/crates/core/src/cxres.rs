//! Free resolutions of bounded chain complexes: the Cartan–Eilenberg double
//! complex built from horseshoe lifts, its totalization, and the
//! augmentation onto the resolved complex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundedComplex, ChainMap, Orientation};
use crate::double::DoubleComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{map_piece, ComplexPiece};
use crate::linalg::Mat;
use crate::matrix::{free_order, BlockBuilder, Matrix};
use crate::module::{Elem, FpModule, MapSolver, Subquotient};
use crate::resolution::{minimal_free_resolution, FreeResolution};
use crate::ring::Ring;
use crate::vector::Vector;

/// Column `p` of the Cartan–Eilenberg resolution: `P_{p,q} = B_p ⊕ H_p ⊕ B_{p-1}`
/// resolved in `q`.
#[derive(Clone, Debug)]
pub struct CeColumn<F: Field> {
    pub p: i32,
    pub boundaries: FreeResolution<F>,
    pub homology: FreeResolution<F>,
    /// Generator counts of the three summands per row `q`.
    pub split: Vec<(usize, usize, usize)>,
    pub frees: Vec<Vec<i32>>,
    /// `vert[q - 1]: P_{p,q} -> P_{p,q-1}`.
    pub vert: Vec<Matrix<F>>,
    /// `P_{p,0} -> C_p` on generators.
    pub augmentation: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct CartanEilenberg<F: Field> {
    pub target: BoundedComplex<F>,
    pub columns: Vec<CeColumn<F>>,
    pub cutoff: usize,
    /// Every column resolution terminated.
    pub complete: bool,
}

fn sub_resolution<F: Field>(s: &Subquotient<F>, cutoff: usize) -> Result<FreeResolution<F>> {
    let r = minimal_free_resolution(&s.module, cutoff);
    if r.module.gens() != s.module.gens() {
        return Err(Error::Computation("subquotient presentation was not minimal".into()));
    }
    Ok(r)
}

fn hcat(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().chain(b).copied().collect()
}

fn solve<F: Field>(s: &MapSolver<F>, y: &Elem<F>, what: &str) -> Result<Elem<F>> {
    s.lift(y)
        .ok_or_else(|| Error::Computation(format!("horseshoe lift failed: {what}")))
}

/// Cartan–Eilenberg resolution of a chain complex with columns resolved through row `cutoff`.
pub fn cartan_eilenberg<F: Field>(c: &BoundedComplex<F>, cutoff: usize) -> Result<CartanEilenberg<F>> {
    if c.orientation() != Orientation::Chain {
        return Err(Error::InvalidInput("Cartan–Eilenberg resolution expects a chain complex".into()));
    }
    let ring = c.ring().clone();
    let fld = ring.field();
    let lo = c.lo();
    let hi = c.hi();
    let q_max = cutoff;
    let mut b_res: BTreeMap<i32, (Subquotient<F>, FreeResolution<F>)> = BTreeMap::new();
    for p in lo..=hi {
        let cp = c.slot(p).unwrap();
        let numer: Vec<Elem<F>> = match c.slot(p + 1) {
            Some(_) => c.diff(p + 1).unwrap().cols().to_vec(),
            None => Vec::new(),
        };
        let sq = Subquotient::new(&ring, cp.gens(), &numer, cp.rels().to_vec());
        let r = sub_resolution(&sq, q_max)?;
        b_res.insert(p, (sq, r));
    }
    let mut columns = Vec::new();
    let mut complete = true;
    for p in lo..=hi {
        let cp = c.slot(p).unwrap();
        let h_sq = c.homology(p);
        let rh = sub_resolution(&h_sq, q_max)?;
        let (b_sq, rb) = &b_res[&p];
        let prev = b_res.get(&(p - 1));
        complete &= rb.terminated && rh.terminated && prev.is_none_or(|x| x.1.terminated);
        let cord = free_order(&ring, cp.gens());
        let to_c = |reps: &[Elem<F>], src: &[i32]| Matrix::from_cols_unchecked(src.to_vec(), cp.gens().to_vec(), reps.to_vec());
        // first horseshoe: 0 -> B_p -> Z_p -> H_p -> 0
        let eps_b = to_c(&b_sq.reps, &rb.free(0));
        let sigma = to_c(&h_sq.reps, &rh.free(0));
        let eps_b_solver = MapSolver::new(&ring, &eps_b, cp.rels());
        let mut lambda: Vec<Matrix<F>> = Vec::new(); // lambda[q-1]: H_q -> B_{q-1}
        let mut z_free = vec![hcat(&rb.free(0), &rh.free(0))];
        let mut z_diff: Vec<Matrix<F>> = Vec::new();
        for q in 1..=q_max {
            let hq = rh.free(q);
            let dh = rh.d(q);
            let mut cols = Vec::with_capacity(hq.len());
            if q == 1 {
                for j in 0..hq.len() {
                    let y = reduce(&ring, &sigma.apply(&ring, dh.col(j)), &cord);
                    let x = solve(&eps_b_solver, &y, "H_1 into B_0")?;
                    cols.push(x.neg(fld));
                }
            } else {
                let solver = MapSolver::new(&ring, &rb.d(q - 1), &[]);
                let prev_l = &lambda[q - 2];
                for j in 0..hq.len() {
                    let y = prev_l.apply(&ring, dh.col(j)).neg(fld);
                    cols.push(solve(&solver, &y, "H_q into B_{q-1}")?);
                }
            }
            let l = Matrix::from_cols_unchecked(hq.clone(), rb.free(q - 1), cols);
            let src = hcat(&rb.free(q), &hq);
            let tgt = z_free[q - 1].clone();
            let mut bb = BlockBuilder::new(&ring, src.clone(), tgt);
            bb.place(0, 0, &rb.d(q), false);
            bb.place(0, rb.free(q).len(), &l, false);
            bb.place(rb.free(q - 1).len(), rb.free(q).len(), &dh, false);
            z_diff.push(bb.finish());
            z_free.push(src);
            lambda.push(l);
        }
        let eps_z = Matrix::from_cols_unchecked(
            z_free[0].clone(),
            cp.gens().to_vec(),
            b_sq.reps.iter().chain(&h_sq.reps).cloned().collect(),
        );
        // second horseshoe: 0 -> Z_p -> C_p -> B_{p-1} -> 0
        let (frees, vert, augmentation, split) = match prev {
            None => {
                let split = (0..=q_max).map(|q| (rb.free(q).len(), rh.free(q).len(), 0)).collect();
                (z_free, z_diff, eps_z, split)
            }
            Some((bp_sq, rbp)) => {
                let dp = c.diff(p).unwrap();
                let prev_slot = c.slot(p - 1).unwrap();
                let tau_solver = MapSolver::new(&ring, dp, prev_slot.rels());
                let tau_cols: Vec<Elem<F>> = bp_sq
                    .reps
                    .iter()
                    .map(|rep| match dp.cols().iter().position(|col| col == rep) {
                        Some(j) => Ok(Vector::term(crate::monomial::Monomial::one(ring.nvars()), j as u32, fld.one())),
                        None => solve(&tau_solver, rep, "boundary generator along d"),
                    })
                    .collect::<Result<_>>()?;
                let tau = Matrix::from_cols_unchecked(rbp.free(0), cp.gens().to_vec(), tau_cols);
                let eps_z_solver = MapSolver::new(&ring, &eps_z, cp.rels());
                let mut mu: Vec<Matrix<F>> = Vec::new();
                let mut frees = vec![hcat(&z_free[0], &rbp.free(0))];
                let mut vert = Vec::new();
                for q in 1..=q_max {
                    let bq = rbp.free(q);
                    let db = rbp.d(q);
                    let mut cols = Vec::with_capacity(bq.len());
                    if q == 1 {
                        for j in 0..bq.len() {
                            let y = reduce(&ring, &tau.apply(&ring, db.col(j)), &cord);
                            let x = solve(&eps_z_solver, &y, "B'_1 into Z_0")?;
                            cols.push(x.neg(fld));
                        }
                    } else {
                        let solver = MapSolver::new(&ring, &z_diff[q - 2], &[]);
                        for j in 0..bq.len() {
                            let y = mu[q - 2].apply(&ring, db.col(j)).neg(fld);
                            cols.push(solve(&solver, &y, "B'_q into Z_{q-1}")?);
                        }
                    }
                    let m = Matrix::from_cols_unchecked(bq.clone(), z_free[q - 1].clone(), cols);
                    let src = hcat(&z_free[q], &bq);
                    let mut bb = BlockBuilder::new(&ring, src.clone(), frees[q - 1].clone());
                    bb.place(0, 0, &z_diff[q - 1], false);
                    bb.place(0, z_free[q].len(), &m, false);
                    bb.place(z_free[q - 1].len(), z_free[q].len(), &db, false);
                    vert.push(bb.finish());
                    frees.push(src);
                    mu.push(m);
                }
                let mut aug_cols = eps_z.cols().to_vec();
                aug_cols.extend(tau.cols().iter().cloned());
                let aug = Matrix::from_cols_unchecked(frees[0].clone(), cp.gens().to_vec(), aug_cols);
                let split = (0..=q_max)
                    .map(|q| (rb.free(q).len(), rh.free(q).len(), rbp.free(q).len()))
                    .collect();
                (frees, vert, aug, split)
            }
        };
        columns.push(CeColumn {
            p,
            boundaries: rb.clone(),
            homology: rh,
            split,
            frees,
            vert,
            augmentation,
        });
    }
    Ok(CartanEilenberg {
        target: c.clone(),
        columns,
        cutoff,
        complete,
    })
}

fn reduce<F: Field>(ring: &Ring<F>, v: &Elem<F>, ord: &crate::vector::ModuleOrder) -> Elem<F> {
    crate::matrix::reduce_vector(ring, v, ord)
}

impl<F: Field> CartanEilenberg<F> {
    fn column(&self, p: i32) -> Option<&CeColumn<F>> {
        self.columns.iter().find(|c| c.p == p)
    }

    /// Horizontal map `P_{p,q} -> P_{p-1,q}`: the `B_{p-1}` summand maps identically.
    pub fn horizontal(&self, p: i32, q: usize) -> Option<Matrix<F>> {
        let src = self.column(p)?;
        let tgt = self.column(p - 1)?;
        let ring = self.target.ring();
        let (b, h, bp) = src.split[q];
        let mut bb = BlockBuilder::new(ring, src.frees[q].clone(), tgt.frees[q].clone());
        let one = ring.one();
        for k in 0..bp {
            bb.place_entry(k, b + h + k, &one, false);
        }
        Some(bb.finish())
    }

    /// The double complex `P_{p,q}` (chain orientation; `p` the complex index).
    pub fn double_complex(&self) -> Result<DoubleComplex<F>> {
        let ring = self.target.ring();
        let mut cells = BTreeMap::new();
        let mut horiz = BTreeMap::new();
        let mut vert = BTreeMap::new();
        for col in &self.columns {
            for q in 0..col.frees.len() {
                cells.insert((col.p, q as i32), FpModule::free(ring, col.frees[q].clone()));
                if q >= 1 {
                    vert.insert((col.p, q as i32), col.vert[q - 1].clone());
                }
                if let Some(h) = self.horizontal(col.p, q) {
                    horiz.insert((col.p, q as i32), h);
                }
            }
        }
        let ct = (!self.complete).then_some(self.target.lo() + self.cutoff as i32);
        DoubleComplex::new(ring, Orientation::Chain, cells, horiz, vert, ct)
    }
}

/// A free complex quasi-isomorphic to a target complex.
#[derive(Clone, Debug)]
pub struct ComplexResolution<F: Field> {
    pub target: BoundedComplex<F>,
    pub total: BoundedComplex<F>,
    pub augmentation: ChainMap<F>,
    /// Cartan–Eilenberg data; `None` when the target was already free.
    pub ce: Option<CartanEilenberg<F>>,
    /// Total degrees through which the total is exact; `None` if untruncated.
    pub complete_through: Option<i32>,
}

/// Totalized Cartan–Eilenberg resolution with its augmentation.
pub fn ce_resolution<F: Field>(c: &BoundedComplex<F>, cutoff: usize) -> Result<ComplexResolution<F>> {
    let ce = cartan_eilenberg(c, cutoff)?;
    let dc = ce.double_complex()?;
    let (total, layout) = dc.total();
    let ring = c.ring();
    let mut maps = BTreeMap::new();
    for col in &ce.columns {
        let n = col.p;
        if total.slot(n).is_none() {
            continue;
        }
        let Some((off, _)) = layout.locate(n, (n, 0)) else { continue };
        let mut bb = BlockBuilder::new(ring, total.degs(n), c.degs(n));
        bb.place(0, off, &col.augmentation, false);
        maps.insert(n, bb.finish());
    }
    let augmentation = ChainMap::new(total.clone(), c.clone(), maps)?;
    Ok(ComplexResolution {
        target: c.clone(),
        total,
        augmentation,
        complete_through: dc.complete_through,
        ce: Some(ce),
    })
}

/// A free resolution of a chain complex: the complex itself when its slots
/// are free, else the totalized Cartan–Eilenberg resolution.
pub fn resolve_complex<F: Field>(c: &BoundedComplex<F>, cutoff: usize) -> Result<ComplexResolution<F>> {
    if c.is_free() {
        return Ok(ComplexResolution {
            target: c.clone(),
            total: c.clone(),
            augmentation: ChainMap::identity(c),
            ce: None,
            complete_through: None,
        });
    }
    ce_resolution(c, cutoff)
}

/// Default row cutoff: the width of the complex plus the module cutoff.
pub fn default_complex_cutoff<F: Field>(c: &BoundedComplex<F>) -> usize {
    c.len() + crate::invariants::default_cutoff(c.ring().nvars())
}

/// Result of comparing induced maps on homology in a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoReport {
    pub pass: bool,
    pub window: (i32, i32),
    /// First `(slot, internal degree, source dim, target dim, rank)` that fails.
    pub first_failure: Option<(i32, i32, usize, usize, usize)>,
    pub checked: usize,
}

/// Degreewise check that `f` induces isomorphisms on homology at `slots`.
pub fn verify_quasi_iso_at<F: Field>(f: &ChainMap<F>, window: (i32, i32), slots: &[i32]) -> QuasiIsoReport {
    let ring = f.source.ring();
    let fld = ring.field();
    let o = f.source.orientation();
    let mut checked = 0;
    for t in window.0..=window.1 {
        let ps = ComplexPiece::new(&f.source, t);
        let pt = ComplexPiece::new(&f.target, t);
        for &i in slots {
            let (zs, bs) = ps.cycles_boundaries(fld, i, o.back(i));
            let (zt, bt) = pt.cycles_boundaries(fld, i, o.back(i));
            let (hs, ht) = (zs.dim() - bs.dim(), zt.dim() - bt.dim());
            // rank of the induced map, and whether it is injective
            let (rank, inj) = match (f.source.slot(i), f.target.slot(i)) {
                (Some(x), Some(y)) => {
                    let si = (i - f.source.lo()) as usize;
                    let ti = (i - f.target.lo()) as usize;
                    let m: Mat<F::Elem> = map_piece(&f.map(i), x, &ps.pieces[si], y, &pt.pieces[ti]);
                    let img = zs.image(fld, &m).sum(fld, &bt);
                    let ker = bt.preimage(fld, &m).intersect(fld, &zs);
                    (img.dim() - bt.dim(), ker.dim() == bs.dim())
                }
                _ => (0, hs == 0),
            };
            checked += 1;
            if !(hs == ht && rank == ht && inj) {
                return QuasiIsoReport {
                    pass: false,
                    window,
                    first_failure: Some((i, t, hs, ht, rank)),
                    checked,
                };
            }
        }
    }
    QuasiIsoReport {
        pass: true,
        window,
        first_failure: None,
        checked,
    }
}

/// `verify_quasi_iso_at` over every slot of the target.
pub fn verify_quasi_iso<F: Field>(f: &ChainMap<F>, window: (i32, i32)) -> QuasiIsoReport {
    let slots: Vec<i32> = f.target.indices().collect();
    verify_quasi_iso_at(f, window, &slots)
}

impl<F: Field> ComplexResolution<F> {
    /// Slots of the target whose homology the truncated total reproduces.
    pub fn valid_slots(&self) -> Vec<i32> {
        self.target
            .indices()
            .filter(|&i| self.complete_through.is_none_or(|c| i < c))
            .collect()
    }

    pub fn verify(&self, window: (i32, i32)) -> QuasiIsoReport {
        verify_quasi_iso_at(&self.augmentation, window, &self.valid_slots())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{koszul, KoszulData};
    use crate::field::Rationals;
    use std::sync::Arc;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<Ring<Rationals>> {
        Arc::new(Ring::from_strs(Rationals, vars, rels).unwrap())
    }

    #[test]
    fn free_input_is_returned() {
        let a = ring(&["x", "y"], &[]);
        let k = koszul(&KoszulData::new(a.vars(), FpModule::ring_module(&a)).unwrap(), Orientation::Chain);
        let r = resolve_complex(&k, 4).unwrap();
        assert!(r.ce.is_none());
        assert_eq!(r.total.degs(1), k.degs(1));
        assert!(verify_quasi_iso(&r.augmentation, (0, 4)).pass);
    }

    #[test]
    fn module_in_slot_zero() {
        let a = ring(&["x"], &[]);
        let c = BoundedComplex::single(&FpModule::residue_field(&a), Orientation::Chain);
        let r = resolve_complex(&c, 4).unwrap();
        assert_eq!(r.total.degs(0), vec![0]);
        assert_eq!(r.total.degs(1), vec![1]);
        assert!(r.total.slot(2).is_none_or(|s| s.ngens() == 0));
        assert!(r.verify((0, 4)).pass);
    }

    #[test]
    fn koszul_over_quotient() {
        let a = ring(&["x", "y"], &["x*y", "y^2"]);
        let y = a.parse("y").unwrap();
        let k = koszul(&KoszulData::new(vec![y], FpModule::ring_module(&a)).unwrap(), Orientation::Chain);
        let r = ce_resolution(&k, 5).unwrap();
        r.total.verify().unwrap();
        let ranks: Vec<usize> = r.total.indices().map(|i| r.total.degs(i).len()).collect();
        // columns grow with the row index until the truncation
        assert!(ranks[..=5].windows(2).all(|w| w[1] > w[0]), "{ranks:?}");
        assert_eq!(r.complete_through, Some(5));
        assert!(r.verify((0, 6)).pass);
        // the zero map is not a quasi-isomorphism
        let zero = ChainMap::new(k.clone(), k.clone(), BTreeMap::new()).unwrap();
        let rep = verify_quasi_iso(&zero, (0, 3));
        assert!(!rep.pass);
        assert_eq!(rep.first_failure.unwrap().0, 0);
    }
}
