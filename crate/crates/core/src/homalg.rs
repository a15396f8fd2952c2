//! Ext, Tor, Hom and annihilators through minimal free resolutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{BoundedComplex, Orientation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functor::{hom_free, hom_pre, tensor_free, tensor_pre};
use crate::matrix::{BlockBuilder, Matrix};
use crate::module::{kernel, FpModule, Subquotient};
use crate::resolution::{minimal_free_resolution, FreeResolution};
use crate::ring::Poly;

fn need<F: Field>(res: &FreeResolution<F>, i: usize) -> Result<()> {
    if res.knows(i + 1) {
        Ok(())
    } else {
        Err(Error::CutoffExceeded {
            cutoff: res.cutoff,
            needed: i,
        })
    }
}

/// `Hom(F_j, N)` for `j` in `lo..=hi`, as a cochain complex.
pub fn hom_resolution<F: Field>(res: &FreeResolution<F>, n: &FpModule<F>, lo: usize, hi: usize) -> BoundedComplex<F> {
    let slots = (lo..=hi).map(|j| hom_free(&res.free(j), n)).collect();
    let mut diffs = BTreeMap::new();
    for j in lo..hi {
        diffs.insert(j as i32, hom_pre(&res.d(j + 1), n));
    }
    BoundedComplex::new(n.ring(), Orientation::Cochain, lo as i32, slots, diffs).unwrap()
}

/// `F_j ⊗ N` for `j` in `lo..=hi`, as a chain complex.
pub fn tensor_resolution<F: Field>(res: &FreeResolution<F>, n: &FpModule<F>, lo: usize, hi: usize) -> BoundedComplex<F> {
    let slots = (lo..=hi).map(|j| tensor_free(&res.free(j), n)).collect();
    let mut diffs = BTreeMap::new();
    for j in (lo + 1)..=hi {
        diffs.insert(j as i32, tensor_pre(&res.d(j), n));
    }
    BoundedComplex::new(n.ring(), Orientation::Chain, lo as i32, slots, diffs).unwrap()
}

/// `Ext^i(M, N)` from a precomputed resolution of `M`.
pub fn ext_from<F: Field>(res: &FreeResolution<F>, n: &FpModule<F>, i: usize) -> Result<Subquotient<F>> {
    need(res, i)?;
    let lo = i.saturating_sub(1);
    let c = hom_resolution(res, n, lo, i + 1);
    Ok(c.homology(i as i32))
}

/// `Tor_i(M, N)` from a precomputed resolution of `M`.
pub fn tor_from<F: Field>(res: &FreeResolution<F>, n: &FpModule<F>, i: usize) -> Result<Subquotient<F>> {
    need(res, i)?;
    let lo = i.saturating_sub(1);
    let c = tensor_resolution(res, n, lo, i + 1);
    Ok(c.homology(i as i32))
}

fn within(i: usize, cutoff: usize) -> Result<()> {
    if i > cutoff {
        return Err(Error::CutoffExceeded { cutoff, needed: i });
    }
    Ok(())
}

/// `Ext^i(M, N)` for `i <= cutoff`.
pub fn ext<F: Field>(m: &FpModule<F>, n: &FpModule<F>, i: usize, cutoff: usize) -> Result<Subquotient<F>> {
    within(i, cutoff)?;
    ext_from(&minimal_free_resolution(m, i + 1), n, i)
}

/// `Tor_i(M, N)` for `i <= cutoff`.
pub fn tor<F: Field>(m: &FpModule<F>, n: &FpModule<F>, i: usize, cutoff: usize) -> Result<Subquotient<F>> {
    within(i, cutoff)?;
    tor_from(&minimal_free_resolution(m, i + 1), n, i)
}

/// `Hom(M, N)`, as the kernel of the map induced on the presentation of `M`.
pub fn hom<F: Field>(m: &FpModule<F>, n: &FpModule<F>) -> Subquotient<F> {
    let res = minimal_free_resolution(m, 1);
    ext_from(&res, n, 0).expect("presentation is always available")
}

/// Minimal generators of `ann(M)`.
pub fn annihilator<F: Field>(m: &FpModule<F>) -> Vec<Poly<F>> {
    let ring = m.ring();
    let g = m.gens().to_vec();
    let parts: Vec<FpModule<F>> = g.iter().map(|&d| m.twist(d)).collect();
    let refs: Vec<&FpModule<F>> = parts.iter().collect();
    if refs.is_empty() {
        return vec![ring.one()];
    }
    let target = FpModule::direct_sum(&refs);
    // 1 -> sum of e_c, each sitting in degree 0 of its twisted copy
    let mut b = BlockBuilder::new(ring, vec![0], target.gens().to_vec());
    let one = ring.one();
    let r = m.ngens();
    for c in 0..r {
        b.place_entry(c * r + c, 0, &one, false);
    }
    let f: Matrix<F> = b.finish();
    kernel(ring, &f, target.rels())
        .into_iter()
        .map(|v| v.component(0))
        .collect()
}

/// Whether `p` lies in the ideal generated by `gens`.
pub fn ideal_contains<F: Field>(ring: &Arc<crate::ring::Ring<F>>, gens: &[Poly<F>], p: &Poly<F>) -> bool {
    let gb = crate::module::submodule_gb(ring, &[0], gens);
    gb.contains(&ring.nf(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::Ring;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<Ring<Rationals>> {
        Arc::new(Ring::from_strs(Rationals, vars, rels).unwrap())
    }

    #[test]
    fn ext_tor_examples() {
        let a = ring(&["x"], &[]);
        let k = FpModule::residue_field(&a);
        assert_eq!(ext(&k, &k, 1, 4).unwrap().module.length(), Some(1));
        assert!(ext(&k, &k, 2, 4).unwrap().module.is_zero());

        let b = ring(&["x"], &["x^2"]);
        let k = FpModule::residue_field(&b);
        for i in 0..=4 {
            assert_eq!(tor(&k, &k, i, 4).unwrap().module.length(), Some(1));
        }
        assert!(matches!(tor(&k, &k, 5, 4), Err(Error::CutoffExceeded { .. })));

        let c = ring(&["x", "y"], &[]);
        let m = FpModule::cyclic(&c, &[c.parse("x").unwrap()]).unwrap();
        let e1 = ext(&m, &FpModule::ring_module(&c), 1, 4).unwrap().module;
        // A/(x) twisted by 1
        assert_eq!(e1.hilbert_values(-2, 2), vec![0, 1, 1, 1, 1]);
    }

    #[test]
    fn annihilators() {
        let a = ring(&["x", "y"], &["x*y", "y^2"]);
        let m = FpModule::cyclic(&a, &[a.parse("y").unwrap()]).unwrap();
        let ann = annihilator(&m);
        assert_eq!(ann.len(), 1);
        assert_eq!(a.format(&ann[0]), "y");
        let k = FpModule::residue_field(&a);
        assert_eq!(annihilator(&k).len(), 2);
        let h = hom(&k, &FpModule::ring_module(&a)).module;
        // socle of A is spanned by y
        assert_eq!(h.length(), Some(1));
    }
}
