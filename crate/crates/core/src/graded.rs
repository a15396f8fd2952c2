//! Finite-dimensional graded pieces of presented modules, and the matrices of
//! module maps and complexes restricted to one internal degree.

use std::collections::HashMap;

use crate::complex::BoundedComplex;
use crate::field::Field;
use crate::linalg::{column_space, null_space, Mat, Subspace};
use crate::matrix::{free_order, Matrix};
use crate::module::{Elem, FpModule};
use crate::monomial::Monomial;
use crate::vector::Vector;

/// All monomials of weighted degree `d`.
pub fn monomials_of_degree(weights: &[u32], d: i32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: i32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exps(cur, weights));
            }
            return;
        }
        let w = weights[i] as i32;
        let mut e = 0;
        while e * w <= left {
            cur.push(e as u16);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    if d < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Basis of `M_d` by standard monomials `m * e_c`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub degree: i32,
    pub basis: Vec<(Monomial, u32)>,
    index: HashMap<(Monomial, u32), usize>,
}

impl Piece {
    pub fn new<F: Field>(m: &FpModule<F>, d: i32) -> Self {
        let gb = m.gb();
        let w = m.ring().weights();
        let mut basis = Vec::new();
        for (c, &s) in m.gens().iter().enumerate() {
            for mono in monomials_of_degree(w, d - s) {
                if !gb.is_reducible(&mono, c as u32) {
                    basis.push((mono, c as u32));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Piece { degree: d, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an element of degree `self.degree` (reduced first).
    pub fn coords<F: Field>(&self, m: &FpModule<F>, v: &Elem<F>) -> Vec<F::Elem> {
        let f = m.ring().field();
        let nf = m.normal_form(v);
        let mut out = vec![f.zero(); self.dim()];
        for t in nf.terms() {
            let i = self.index[&(t.mono.clone(), t.comp)];
            out[i] = t.coeff.clone();
        }
        out
    }

    /// The basis element `i` as a module element.
    pub fn element<F: Field>(&self, m: &FpModule<F>, i: usize) -> Elem<F> {
        let (mono, c) = &self.basis[i];
        Vector::term(mono.clone(), *c, m.ring().field().one())
    }
}

/// Matrix of `f: X -> Y` (given on generators) from `X_d` to `Y_d`.
pub fn map_piece<F: Field>(
    f: &Matrix<F>,
    x: &FpModule<F>,
    px: &Piece,
    y: &FpModule<F>,
    py: &Piece,
) -> Mat<F::Elem> {
    let ring = x.ring();
    let fld = ring.field();
    let mut cols = Vec::with_capacity(px.dim());
    let ord = free_order(ring, &f.target);
    for (mono, c) in &px.basis {
        let img = f.col(*c as usize).mul_term(mono, &fld.one(), fld);
        let img = crate::matrix::reduce_vector(ring, &img, &ord);
        cols.push(py.coords(y, &img));
    }
    Mat::from_columns(fld, py.dim(), &cols)
}

/// One internal degree of a complex: pieces per slot and the differentials.
pub struct ComplexPiece<F: Field> {
    pub degree: i32,
    pub pieces: Vec<Piece>,
    /// `diffs[k]` leaves slot `lo + k`.
    pub diffs: Vec<Mat<F::Elem>>,
    pub lo: i32,
}

impl<F: Field> ComplexPiece<F> {
    pub fn new(c: &BoundedComplex<F>, d: i32) -> Self {
        let pieces: Vec<Piece> = c.indices().map(|i| Piece::new(c.slot(i).unwrap(), d)).collect();
        let f = c.ring().field();
        let o = c.orientation();
        let diffs = c
            .indices()
            .map(|i| {
                let k = (i - c.lo()) as usize;
                let t = o.step(i);
                match c.slot(t) {
                    Some(tm) => map_piece(
                        c.diff(i).unwrap(),
                        c.slot(i).unwrap(),
                        &pieces[k],
                        tm,
                        &pieces[(t - c.lo()) as usize],
                    ),
                    None => Mat::zeros(f, 0, pieces[k].dim()),
                }
            })
            .collect();
        ComplexPiece {
            degree: d,
            pieces,
            diffs,
            lo: c.lo(),
        }
    }

    pub fn dim(&self, i: i32) -> usize {
        self.idx(i).map_or(0, |k| self.pieces[k].dim())
    }

    fn idx(&self, i: i32) -> Option<usize> {
        let k = i - self.lo;
        (k >= 0 && (k as usize) < self.pieces.len()).then_some(k as usize)
    }

    pub fn diff(&self, i: i32) -> Option<&Mat<F::Elem>> {
        self.idx(i).map(|k| &self.diffs[k])
    }

    /// Cycles and boundaries at slot `i` (with `back` the incoming slot index).
    pub fn cycles_boundaries(&self, f: &F, i: i32, back: i32) -> (Subspace<F::Elem>, Subspace<F::Elem>) {
        let n = self.dim(i);
        let z = match self.diff(i) {
            Some(d) => null_space(f, d),
            None => Subspace::zero(0),
        };
        let b = match self.diff(back) {
            Some(d) if d.rows == n => column_space(f, d),
            _ => Subspace::zero(n),
        };
        (z, b)
    }

    /// `dim H` at slot `i` in this degree.
    pub fn homology_dim(&self, f: &F, i: i32, back: i32) -> usize {
        let (z, b) = self.cycles_boundaries(f, i, back);
        z.dim() - b.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{koszul, KoszulData, Orientation};
    use crate::field::PrimeField;
    use crate::ring::Ring;
    use std::sync::Arc;

    #[test]
    fn homology_dims_match_hilbert() {
        let f = PrimeField::new(32003).unwrap();
        let a = Arc::new(Ring::from_strs(f, &["x", "y", "z"], &["x*y", "x*z", "y*z"]).unwrap());
        let d = KoszulData::new(a.vars(), FpModule::ring_module(&a)).unwrap();
        let k = koszul(&d, Orientation::Chain);
        for deg in 0..6 {
            let p = ComplexPiece::new(&k, deg);
            for i in 0..=3 {
                let h = k.homology(i).module.hilbert().value(deg);
                assert_eq!(p.homology_dim(&f, i, i + 1) as i64, h, "H_{i} degree {deg}");
                // rank-nullity per degree
                let dmat = p.diff(i).unwrap();
                assert_eq!(dmat.rank(&f) + dmat.kernel(&f).len(), p.dim(i));
            }
        }
    }
}
