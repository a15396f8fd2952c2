//! Depth, grade, dimension, projective dimension and Bass numbers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{koszul, KoszulData, Orientation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homalg::ext_from;
use crate::module::{minimal_generators, FpModule};
use crate::resolution::{minimal_free_resolution, ProjDim};
use crate::ring::Poly;

/// Default homological cutoff for a ring in `n` variables.
pub fn default_cutoff(nvars: usize) -> usize {
    2 * nvars + 4
}

/// A minimal homogeneous generating set of the ideal spanned by `gens`.
pub fn minimal_ideal_generators<F: Field>(m: &FpModule<F>, gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let ring = m.ring();
    let polys: Vec<Poly<F>> = gens.iter().map(|g| ring.nf(g)).filter(|g| !g.is_zero()).collect();
    minimal_generators(ring, &[0], None, &polys)
        .into_iter()
        .map(|(tag, _)| polys[tag].clone())
        .collect()
}

/// Largest `i` with `H_i(u; M) != 0`, or `None` if all vanish.
pub fn top_koszul_homology<F: Field>(u: &[Poly<F>], m: &FpModule<F>) -> Result<Option<usize>> {
    let data = KoszulData::new(u.to_vec(), m.clone())?;
    let k = koszul(&data, Orientation::Chain);
    Ok((0..=u.len()).rev().find(|&i| !k.homology(i as i32).module.is_zero()))
}

/// `e - max{i : H_i(x_1..x_e; M) != 0}` over the variables.
pub fn depth<F: Field>(m: &FpModule<F>) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::InvalidInput("depth of the zero module is undefined".into()));
    }
    let ring = m.ring();
    let vars = ring.vars();
    let top = top_koszul_homology(&vars, m)?.expect("H_0 of a nonzero module is nonzero");
    Ok(vars.len() - top)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grade {
    Finite(usize),
    /// `IM = M`.
    Infinite,
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => write!(f, "inf"),
        }
    }
}

/// `grade(I, M) = mu(I) - max{i : H_i(u; M) != 0}` for minimal generators `u` of `I`.
pub fn grade<F: Field>(ideal: &[Poly<F>], m: &FpModule<F>) -> Result<Grade> {
    let u = minimal_ideal_generators(m, ideal);
    let ring = m.ring();
    if u.iter().any(|p| ring.degree(p) == Some(0)) {
        return Ok(Grade::Infinite);
    }
    match top_koszul_homology(&u, m)? {
        None => Ok(Grade::Infinite),
        Some(t) => Ok(Grade::Finite(u.len() - t)),
    }
}

/// `dim_k Ext^i(k, M)` for `0 <= i <= cutoff`.
pub fn bass_numbers<F: Field>(m: &FpModule<F>, cutoff: usize) -> Vec<u64> {
    let ring = m.ring();
    let k = FpModule::residue_field(ring);
    let res = minimal_free_resolution(&k, cutoff + 1);
    (0..=cutoff)
        .map(|i| {
            ext_from(&res, m, i)
                .expect("resolution reaches cutoff + 1")
                .module
                .length()
                .expect("Ext(k, -) has finite length")
        })
        .collect()
}

/// Invariants of one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub depth: Option<usize>,
    pub krull_dim: Option<usize>,
    pub cmd: Option<usize>,
    pub mu: usize,
    pub grade_of: BTreeMap<String, Grade>,
    pub projdim: ProjDim,
    pub bass: Vec<u64>,
    pub cutoff: usize,
}

pub fn invariants<F: Field>(
    m: &FpModule<F>,
    ideals: &[(String, Vec<Poly<F>>)],
    cutoff: usize,
) -> Result<InvariantRecord> {
    let zero = m.is_zero();
    let (depth, krull_dim) = if zero {
        (None, None)
    } else {
        (Some(depth(m)?), m.dim())
    };
    let cmd = match (depth, krull_dim) {
        (Some(t), Some(d)) => {
            if t > d {
                return Err(Error::Computation(format!("depth {t} exceeds dimension {d}")));
            }
            Some(d - t)
        }
        _ => None,
    };
    let mut grade_of = BTreeMap::new();
    for (name, gens) in ideals {
        for (i, g) in gens.iter().enumerate() {
            if !m.ring().is_homogeneous(g) {
                return Err(Error::NotHomogeneous(format!("ideal {name} generator #{i}")));
            }
        }
        grade_of.insert(name.clone(), grade(gens, m)?);
    }
    let res = minimal_free_resolution(m, cutoff);
    Ok(InvariantRecord {
        depth,
        krull_dim,
        cmd,
        mu: res.module.ngens(),
        grade_of,
        projdim: res.projdim(),
        bass: bass_numbers(m, cutoff),
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::Ring;
    use std::sync::Arc;

    #[test]
    fn thurs_depths() {
        let a = Arc::new(Ring::from_strs(Rationals, &["x", "y"], &["x*y", "y^2"]).unwrap());
        let y = a.parse("y").unwrap();
        let r = invariants(&FpModule::ring_module(&a), &[("m".into(), a.vars())], 4).unwrap();
        assert_eq!((r.depth, r.krull_dim, r.cmd), (Some(0), Some(1), Some(1)));
        assert_eq!(r.grade_of["m"], Grade::Finite(0));
        let h0 = FpModule::cyclic(&a, &[y.clone()]).unwrap();
        assert_eq!(depth(&h0).unwrap(), 1);
        // H_1(y; A) = (0 :_A y) = (x, y)
        let h1 = FpModule::ideal(&a, &a.vars()).unwrap();
        assert_eq!(depth(&h1).unwrap(), 0);
        assert!(depth(&FpModule::zero(&a)).is_err());
    }

    #[test]
    fn polynomial_ring_records() {
        let a = Arc::new(Ring::from_strs(Rationals, &["x", "y", "z"], &[]).unwrap());
        let m = FpModule::cyclic(&a, &[a.parse("x").unwrap(), a.parse("y").unwrap()]).unwrap();
        let r = invariants(&m, &[("unit".into(), vec![a.one()])], 6).unwrap();
        assert_eq!(r.projdim, ProjDim::Finite(2));
        assert_eq!(r.depth, Some(1));
        assert_eq!(r.grade_of["unit"], Grade::Infinite);
        assert_eq!(r.bass[..4], [0, 1, 2, 1]);
        assert!(r.bass[4..].iter().all(|&b| b == 0));
    }
}
