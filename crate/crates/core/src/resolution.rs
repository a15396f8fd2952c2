//! Minimal graded free resolutions and Betti tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundedComplex, Orientation};
use crate::field::Field;
use crate::matrix::{free_order, Matrix};
use crate::module::{kernel, Elem, FpModule};
use crate::vector::Vector;

/// Projective dimension as far as a truncated resolution can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjDim {
    Finite(usize),
    AtLeast(usize),
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite(p) => write!(f, "{p}"),
            ProjDim::AtLeast(c) => write!(f, "≥{c}"),
        }
    }
}

/// `F_0 <- F_1 <- ...`; `maps[i]` is `d_{i+1}: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub module: FpModule<F>,
    pub frees: Vec<Vec<i32>>,
    pub maps: Vec<Matrix<F>>,
    /// A zero kernel was reached, so `frees` is the whole resolution.
    pub terminated: bool,
    pub cutoff: usize,
}

/// Minimal free resolution of `m` computed through `F_cutoff`.
///
/// The resolved module is the minimal presentation of `m`; generators of
/// `F_0` correspond to its generators.
pub fn minimal_free_resolution<F: Field>(m: &FpModule<F>, cutoff: usize) -> FreeResolution<F> {
    let ring = m.ring().clone();
    let min = m.minimize().module;
    let mut frees = vec![min.gens().to_vec()];
    let mut maps: Vec<Matrix<F>> = Vec::new();
    let mut terminated = false;
    if min.ngens() == 0 {
        terminated = true;
    } else {
        let mut cur = min.presentation();
        let mut i = 1;
        loop {
            if cur.ncols() == 0 {
                terminated = true;
                break;
            }
            if i > cutoff {
                break;
            }
            frees.push(cur.source.clone());
            maps.push(cur.clone());
            let ker = kernel(&ring, &cur, &[]);
            let ord = free_order(&ring, &cur.source);
            let degs = ker.iter().map(|v| v.degree(&ord).unwrap()).collect();
            cur = Matrix::from_cols_unchecked(degs, cur.source.clone(), ker);
            i += 1;
        }
    }
    FreeResolution {
        module: min,
        frees,
        maps,
        terminated,
        cutoff,
    }
}

impl<F: Field> FreeResolution<F> {
    /// Index of the last nonzero free module.
    pub fn length(&self) -> usize {
        self.frees.iter().rposition(|f| !f.is_empty()).unwrap_or(0)
    }

    pub fn projdim(&self) -> ProjDim {
        if self.terminated {
            ProjDim::Finite(self.length())
        } else {
            ProjDim::AtLeast(self.cutoff + 1)
        }
    }

    /// Whether `F_i` is known (computed or known to be zero).
    pub fn knows(&self, i: usize) -> bool {
        i < self.frees.len() || self.terminated
    }

    pub fn free(&self, i: usize) -> Vec<i32> {
        self.frees.get(i).cloned().unwrap_or_default()
    }

    /// `d_i: F_i -> F_{i-1}` for `i >= 1`.
    pub fn d(&self, i: usize) -> Matrix<F> {
        match self.maps.get(i - 1) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.free(i), self.free(i - 1)),
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.frees.iter().map(|f| f.len()).collect()
    }

    pub fn betti(&self) -> BettiTable {
        let rows = self
            .frees
            .iter()
            .map(|f| {
                let mut m = BTreeMap::new();
                for &d in f {
                    *m.entry(d).or_insert(0usize) += 1;
                }
                m
            })
            .collect();
        BettiTable { rows }
    }

    /// The resolution as a chain complex `F_0 <- ... <- F_len` of free modules.
    pub fn complex(&self) -> BoundedComplex<F> {
        let ring: &Arc<_> = self.module.ring();
        let top = self.frees.len() - 1;
        let slots = (0..=top).map(|i| FpModule::free(ring, self.frees[i].clone())).collect();
        let diffs = (1..=top).map(|i| (i as i32, self.d(i))).collect();
        BoundedComplex::new(ring, Orientation::Chain, 0, slots, diffs).expect("resolution is a complex")
    }

    /// Images of the `F_0` generators in the minimal presentation of the module.
    pub fn augmentation(&self) -> Vec<Elem<F>> {
        let ring = self.module.ring();
        (0..self.module.ngens())
            .map(|k| {
                Vector::term(
                    crate::monomial::Monomial::one(ring.nvars()),
                    k as u32,
                    ring.field().one(),
                )
            })
            .collect()
    }
}

/// Graded Betti numbers: `rows[i][j]` generators of `F_i` in degree `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub rows: Vec<BTreeMap<i32, usize>>,
}

impl BettiTable {
    pub fn total(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.values().sum()).collect()
    }

    /// `i \t degree \t count` lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("i\tdegree\tbetti\n");
        for (i, r) in self.rows.iter().enumerate() {
            for (d, c) in r {
                s.push_str(&format!("{i}\t{d}\t{c}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::Ring;

    #[test]
    fn standard_examples() {
        let a = Arc::new(Ring::from_strs(Rationals, &["x"], &[]).unwrap());
        let r = minimal_free_resolution(&FpModule::residue_field(&a), 6);
        assert_eq!(r.ranks(), vec![1, 1]);
        assert_eq!(r.projdim(), ProjDim::Finite(1));

        let b = Arc::new(Ring::from_strs(Rationals, &["x"], &["x^2"]).unwrap());
        let r = minimal_free_resolution(&FpModule::residue_field(&b), 5);
        assert_eq!(r.ranks(), vec![1; 6]);
        assert_eq!(r.projdim(), ProjDim::AtLeast(6));
        assert!(r.maps.iter().all(|m| m.is_minimal()));
        let degs: Vec<i32> = r.frees.iter().map(|f| f[0]).collect();
        assert_eq!(degs, vec![0, 1, 2, 3, 4, 5]);

        let c = Arc::new(Ring::from_strs(Rationals, &["x", "y"], &[]).unwrap());
        let m = FpModule::cyclic(&c, &c.vars()).unwrap();
        let r = minimal_free_resolution(&m, 8);
        assert_eq!(r.ranks(), vec![1, 2, 1]);
        assert_eq!(r.projdim(), ProjDim::Finite(2));
        r.complex().verify().unwrap();
    }
}
