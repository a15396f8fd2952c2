//! Degree-0 homogeneous maps between graded free modules over a ring.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Poly, Ring};
use crate::vector::{ModuleOrder, Term, Vector};

/// Order on a free module with the given generator degrees.
pub fn free_order<F: Field>(ring: &Ring<F>, degs: &[i32]) -> ModuleOrder {
    ModuleOrder::new(ring.mono_order(), degs.to_vec())
}

/// Componentwise normal form modulo the ring relations.
pub fn reduce_vector<F: Field>(ring: &Ring<F>, v: &Vector<F::Elem>, ord: &ModuleOrder) -> Vector<F::Elem> {
    if ring.is_polynomial_ring() || v.is_zero() {
        return v.clone();
    }
    let rank = v.max_component().unwrap() + 1;
    let mut terms: Vec<Term<F::Elem>> = Vec::with_capacity(v.len());
    for c in 0..rank {
        let p = v.component(c);
        if p.is_zero() {
            continue;
        }
        let r = ring.nf(&p);
        terms.extend(Vector::embed(&r, c).into_terms());
    }
    Vector::from_terms(terms, ring.field(), ord)
}

/// A map `A^source -> A^target`; column `j` is the image of generator `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub source: Vec<i32>,
    pub target: Vec<i32>,
    cols: Vec<Vector<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    /// Columns must be homogeneous of the matching source degree.
    pub fn new(ring: &Ring<F>, source: Vec<i32>, target: Vec<i32>, cols: Vec<Vector<F::Elem>>) -> Result<Self> {
        if cols.len() != source.len() {
            return Err(Error::InvalidInput(format!(
                "{} columns for a source of rank {}",
                cols.len(),
                source.len()
            )));
        }
        let ord = free_order(ring, &target);
        let mut out = Vec::with_capacity(cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            if let Some(m) = c.max_component() {
                if m as usize >= target.len() {
                    return Err(Error::InvalidInput(format!("column {j} leaves the target")));
                }
            }
            let c = reduce_vector(ring, &c, &ord);
            if !c.is_homogeneous(&ord) {
                return Err(Error::NotHomogeneous(format!("column {j}")));
            }
            if let Some(d) = c.degree(&ord) {
                if d != source[j] {
                    return Err(Error::InvalidInput(format!(
                        "column {j} has degree {d}, expected {}",
                        source[j]
                    )));
                }
            }
            out.push(c);
        }
        Ok(Matrix { source, target, cols: out })
    }

    /// Trusted constructor for columns already reduced and sorted.
    pub(crate) fn from_cols_unchecked(source: Vec<i32>, target: Vec<i32>, cols: Vec<Vector<F::Elem>>) -> Self {
        debug_assert_eq!(source.len(), cols.len());
        Matrix { source, target, cols }
    }

    /// `entries[i][j]` is the `(row i, column j)` entry.
    pub fn from_entries(ring: &Ring<F>, source: Vec<i32>, target: Vec<i32>, entries: &[Vec<Poly<F>>]) -> Result<Self> {
        let ord = free_order(ring, &target);
        if entries.len() != target.len() {
            return Err(Error::InvalidInput("row count differs from target rank".into()));
        }
        let mut cols = Vec::with_capacity(source.len());
        for j in 0..source.len() {
            let mut terms = Vec::new();
            for (i, row) in entries.iter().enumerate() {
                if row.len() != source.len() {
                    return Err(Error::InvalidInput(format!("row {i} has wrong length")));
                }
                terms.extend(Vector::embed(&row[j], i as u32).into_terms());
            }
            cols.push(Vector::from_terms(terms, ring.field(), &ord));
        }
        Matrix::new(ring, source, target, cols)
    }

    pub fn zero(source: Vec<i32>, target: Vec<i32>) -> Self {
        let cols = vec![Vector::zero(); source.len()];
        Matrix { source, target, cols }
    }

    pub fn identity(ring: &Ring<F>, degs: &[i32]) -> Self {
        let cols = (0..degs.len())
            .map(|i| Vector::term(crate::monomial::Monomial::one(ring.nvars()), i as u32, ring.field().one()))
            .collect();
        Matrix {
            source: degs.to_vec(),
            target: degs.to_vec(),
            cols,
        }
    }

    /// Multiplication by a homogeneous ring element, `A^degs(-deg p) -> A^degs`.
    pub fn scalar(ring: &Ring<F>, degs: &[i32], p: &Poly<F>) -> Self {
        let dp = ring.degree(p).unwrap_or(0);
        let ord = free_order(ring, degs);
        let cols = (0..degs.len())
            .map(|i| reduce_vector(ring, &Vector::embed(p, i as u32), &ord))
            .collect();
        Matrix {
            source: degs.iter().map(|d| d + dp).collect(),
            target: degs.to_vec(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.target.len()
    }
    pub fn ncols(&self) -> usize {
        self.source.len()
    }
    pub fn cols(&self) -> &[Vector<F::Elem>] {
        &self.cols
    }
    pub fn col(&self, j: usize) -> &Vector<F::Elem> {
        &self.cols[j]
    }
    pub fn into_cols(self) -> Vec<Vector<F::Elem>> {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly<F> {
        self.cols[j].component(i as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Every entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.cols
            .iter()
            .all(|c| c.terms().iter().all(|t| !t.mono.is_one()))
    }

    /// Image of a source vector.
    pub fn apply(&self, ring: &Ring<F>, v: &Vector<F::Elem>) -> Vector<F::Elem> {
        let f = ring.field();
        let mut terms = Vec::new();
        for t in v.terms() {
            let c = &self.cols[t.comp as usize];
            for s in c.terms() {
                terms.push(Term {
                    mono: s.mono.mul(&t.mono),
                    comp: s.comp,
                    coeff: f.mul(&s.coeff, &t.coeff),
                });
            }
        }
        let ord = free_order(ring, &self.target);
        reduce_vector(ring, &Vector::from_terms(terms, f, &ord), &ord)
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &Ring<F>, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(other.target, self.source, "composition degree mismatch");
        let cols = other.cols.iter().map(|c| self.apply(ring, c)).collect();
        Matrix {
            source: other.source.clone(),
            target: self.target.clone(),
            cols,
        }
    }

    pub fn add(&self, ring: &Ring<F>, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.source, o.source);
        assert_eq!(self.target, o.target);
        let ord = free_order(ring, &self.target);
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(a, b)| a.add(b, ring.field(), &ord))
            .collect();
        Matrix {
            source: self.source.clone(),
            target: self.target.clone(),
            cols,
        }
    }

    pub fn scale(&self, ring: &Ring<F>, c: &F::Elem) -> Matrix<F> {
        let cols = self.cols.iter().map(|v| v.scale(c, ring.field())).collect();
        Matrix {
            source: self.source.clone(),
            target: self.target.clone(),
            cols,
        }
    }

    pub fn neg(&self, ring: &Ring<F>) -> Matrix<F> {
        self.scale(ring, &ring.field().neg(&ring.field().one()))
    }

    /// Twist both source and target by `k`: generator degrees drop by `k`.
    pub fn twist(&self, k: i32) -> Matrix<F> {
        Matrix {
            source: self.source.iter().map(|d| d - k).collect(),
            target: self.target.iter().map(|d| d - k).collect(),
            cols: self.cols.clone(),
        }
    }

    /// Restrict to a subset of the columns.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix<F> {
        Matrix {
            source: idx.iter().map(|&j| self.source[j]).collect(),
            target: self.target.clone(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    /// Entry-wise transpose, as a map between the dual free modules
    /// `Hom(A^target, A) -> Hom(A^source, A)`.
    pub fn dual(&self, ring: &Ring<F>) -> Matrix<F> {
        let src: Vec<i32> = self.target.iter().map(|d| -d).collect();
        let tgt: Vec<i32> = self.source.iter().map(|d| -d).collect();
        let ord = free_order(ring, &tgt);
        let mut cols: Vec<Vec<Term<F::Elem>>> = vec![Vec::new(); src.len()];
        for (j, c) in self.cols.iter().enumerate() {
            for t in c.terms() {
                cols[t.comp as usize].push(Term {
                    mono: t.mono.clone(),
                    comp: j as u32,
                    coeff: t.coeff.clone(),
                });
            }
        }
        let cols = cols
            .into_iter()
            .map(|ts| Vector::from_terms(ts, ring.field(), &ord))
            .collect();
        Matrix {
            source: src,
            target: tgt,
            cols,
        }
    }

    /// All entries as text; rows are target generators.
    pub fn to_strings(&self, ring: &Ring<F>) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| ring.format(&self.entry(i, j))).collect())
            .collect()
    }
}

/// Assembles a matrix out of blocks placed at generator offsets.
pub struct BlockBuilder<'r, F: Field> {
    ring: &'r Ring<F>,
    source: Vec<i32>,
    target: Vec<i32>,
    terms: Vec<Vec<Term<F::Elem>>>,
}

impl<'r, F: Field> BlockBuilder<'r, F> {
    pub fn new(ring: &'r Ring<F>, source: Vec<i32>, target: Vec<i32>) -> Self {
        let n = source.len();
        BlockBuilder {
            ring,
            source,
            target,
            terms: vec![Vec::new(); n],
        }
    }

    /// Add `sign * m` with its rows starting at `row` and columns at `col`.
    pub fn place(&mut self, row: usize, col: usize, m: &Matrix<F>, negate: bool) {
        let f = self.ring.field();
        for (j, c) in m.cols.iter().enumerate() {
            for t in c.terms() {
                self.terms[col + j].push(Term {
                    mono: t.mono.clone(),
                    comp: t.comp + row as u32,
                    coeff: if negate { f.neg(&t.coeff) } else { t.coeff.clone() },
                });
            }
        }
    }

    /// Place a single entry.
    pub fn place_entry(&mut self, row: usize, col: usize, p: &Poly<F>, negate: bool) {
        let f = self.ring.field();
        for t in p.terms() {
            self.terms[col].push(Term {
                mono: t.mono.clone(),
                comp: row as u32,
                coeff: if negate { f.neg(&t.coeff) } else { t.coeff.clone() },
            });
        }
    }

    pub fn finish(self) -> Matrix<F> {
        let ord = free_order(self.ring, &self.target);
        let f = self.ring.field();
        let cols = self
            .terms
            .into_iter()
            .map(|ts| reduce_vector(self.ring, &Vector::from_terms(ts, f, &ord), &ord))
            .collect();
        Matrix {
            source: self.source,
            target: self.target,
            cols,
        }
    }
}

/// Shared handle to a ring.
pub type RingRef<F> = Arc<Ring<F>>;
