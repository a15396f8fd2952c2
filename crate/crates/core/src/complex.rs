//! Bounded chain and cochain complexes of presented modules, Koszul
//! complexes, mapping cones and the Hom/tensor functors on complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::functor::{hom_free, hom_pre, tensor_free, tensor_modules, tensor_pre};
use crate::matrix::{BlockBuilder, Matrix};
use crate::module::{kernel, Elem, FpModule, Subquotient};
use crate::monomial::Monomial;
use crate::ring::{Poly, Ring};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Chain,
    Cochain,
}

impl Orientation {
    /// Index the differential out of slot `i` lands in.
    pub fn step(self, i: i32) -> i32 {
        match self {
            Orientation::Chain => i - 1,
            Orientation::Cochain => i + 1,
        }
    }

    /// Index whose differential lands in slot `i`.
    pub fn back(self, i: i32) -> i32 {
        match self {
            Orientation::Chain => i + 1,
            Orientation::Cochain => i - 1,
        }
    }
}

/// Slots `lo..=hi`; `diffs[k]` leaves slot `lo + k`. Differentials whose
/// target lies outside the support have an empty target.
#[derive(Clone, Debug)]
pub struct BoundedComplex<F: Field> {
    ring: Arc<Ring<F>>,
    orientation: Orientation,
    lo: i32,
    slots: Vec<FpModule<F>>,
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> BoundedComplex<F> {
    /// `diffs[k]` must map slot `lo + k` to its neighbour. Missing or
    /// out-of-range differentials are filled with zero maps.
    pub fn new(
        ring: &Arc<Ring<F>>,
        orientation: Orientation,
        lo: i32,
        slots: Vec<FpModule<F>>,
        diffs: BTreeMap<i32, Matrix<F>>,
    ) -> Result<Self> {
        let hi = lo + slots.len() as i32 - 1;
        let mut ds = Vec::with_capacity(slots.len());
        for (k, s) in slots.iter().enumerate() {
            let i = lo + k as i32;
            let t = orientation.step(i);
            let tgt: Vec<i32> = if t < lo || t > hi {
                Vec::new()
            } else {
                slots[(t - lo) as usize].gens().to_vec()
            };
            let d = match diffs.get(&i) {
                Some(d) if !tgt.is_empty() => d.clone(),
                _ => Matrix::zero(s.gens().to_vec(), tgt.clone()),
            };
            if d.source != s.gens() || d.target != tgt {
                return Err(Error::InvalidInput(format!(
                    "differential at slot {i} has mismatched degrees"
                )));
            }
            ds.push(d);
        }
        Ok(BoundedComplex {
            ring: ring.clone(),
            orientation,
            lo,
            slots,
            diffs: ds,
        })
    }

    /// A module concentrated in slot 0.
    pub fn single(m: &FpModule<F>, orientation: Orientation) -> Self {
        Self::new(m.ring(), orientation, 0, vec![m.clone()], BTreeMap::new()).unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
    pub fn lo(&self) -> i32 {
        self.lo
    }
    pub fn hi(&self) -> i32 {
        self.lo + self.slots.len() as i32 - 1
    }
    pub fn indices(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }
    pub fn len(&self) -> usize {
        self.slots.len()
    }
    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slot(&self, i: i32) -> Option<&FpModule<F>> {
        if i < self.lo {
            return None;
        }
        self.slots.get((i - self.lo) as usize)
    }

    /// Generator degrees of slot `i` (empty outside the support).
    pub fn degs(&self, i: i32) -> Vec<i32> {
        self.slot(i).map(|s| s.gens().to_vec()).unwrap_or_default()
    }

    /// Differential leaving slot `i`.
    pub fn diff(&self, i: i32) -> Option<&Matrix<F>> {
        if i < self.lo {
            return None;
        }
        self.diffs.get((i - self.lo) as usize)
    }

    pub fn is_free(&self) -> bool {
        self.slots.iter().all(|s| s.is_free())
    }

    /// Checks that each differential respects the relations and that
    /// consecutive differentials compose to zero. Returns the first bad slot.
    pub fn verify(&self) -> Result<()> {
        for i in self.indices() {
            let t = self.orientation.step(i);
            let Some(tm) = self.slot(t) else { continue };
            let d = self.diff(i).unwrap();
            for r in self.slot(i).unwrap().rels() {
                if !tm.is_zero_element(&d.apply(&self.ring, r)) {
                    return Err(Error::Computation(format!(
                        "differential at slot {i} does not respect relations"
                    )));
                }
            }
            let Some(next) = self.diff(t) else { continue };
            let Some(nm) = self.slot(self.orientation.step(t)) else { continue };
            let dd = next.compose(&self.ring, d);
            if !dd.cols().iter().all(|c| nm.is_zero_element(c)) {
                return Err(Error::Computation(format!("d∘d ≠ 0 at slot {i}")));
            }
        }
        Ok(())
    }

    /// Homology at slot `i` as a subquotient of the slot's free cover.
    pub fn homology(&self, i: i32) -> Subquotient<F> {
        let Some(s) = self.slot(i) else {
            return Subquotient::new(&self.ring, &[], &[], Vec::new());
        };
        let ring = &self.ring;
        let one = Monomial::one(ring.nvars());
        let all: Vec<Elem<F>> = (0..s.ngens())
            .map(|k| Vector::term(one.clone(), k as u32, ring.field().one()))
            .collect();
        let cycles = match self.slot(self.orientation.step(i)) {
            Some(t) => kernel(ring, self.diff(i).unwrap(), t.rels()),
            None => all,
        };
        let mut den: Vec<Elem<F>> = s.rels().to_vec();
        if let Some(inc) = self.diff(self.orientation.back(i)) {
            den.extend(inc.cols().iter().filter(|c| !c.is_zero()).cloned());
        }
        Subquotient::new(ring, s.gens(), &cycles, den)
    }

    /// Twist every slot by `k`.
    pub fn twist(&self, k: i32) -> Self {
        BoundedComplex {
            ring: self.ring.clone(),
            orientation: self.orientation,
            lo: self.lo,
            slots: self.slots.iter().map(|s| s.twist(k)).collect(),
            diffs: self.diffs.iter().map(|d| d.twist(k)).collect(),
        }
    }

    /// Reindex as a complex of the opposite orientation: slot `i` moves to `-i`.
    pub fn negate_indices(&self) -> Self {
        let hi = self.hi();
        let o = match self.orientation {
            Orientation::Chain => Orientation::Cochain,
            Orientation::Cochain => Orientation::Chain,
        };
        BoundedComplex {
            ring: self.ring.clone(),
            orientation: o,
            lo: -hi,
            slots: self.slots.iter().rev().cloned().collect(),
            diffs: self.diffs.iter().rev().cloned().collect(),
        }
    }

    /// Slotwise `Hom(-, N)` for a chain complex of free modules.
    pub fn hom_into(&self, n: &FpModule<F>) -> Result<Self> {
        if !self.is_free() {
            return Err(Error::InvalidInput(
                "Hom complex needs free slots; resolve the complex first".into(),
            ));
        }
        let orient = match self.orientation {
            Orientation::Chain => Orientation::Cochain,
            Orientation::Cochain => Orientation::Chain,
        };
        let slots: Vec<FpModule<F>> = self.slots.iter().map(|s| hom_free(s.gens(), n)).collect();
        let mut diffs = BTreeMap::new();
        // d_i: C_i -> C_j gives Hom(C_j, N) -> Hom(C_i, N)
        for i in self.indices() {
            let j = self.orientation.step(i);
            if self.slot(j).is_some() {
                diffs.insert(j, hom_pre(self.diff(i).unwrap(), n));
            }
        }
        Self::new(&self.ring, orient, self.lo, slots, diffs)
    }

    /// Slotwise `- ⊗ N`.
    pub fn tensor_with(&self, n: &FpModule<F>) -> Self {
        let slots: Vec<FpModule<F>> = self
            .slots
            .iter()
            .map(|s| if s.is_free() { tensor_free(s.gens(), n) } else { tensor_modules(s, n) })
            .collect();
        let mut diffs = BTreeMap::new();
        for i in self.indices() {
            if self.slot(self.orientation.step(i)).is_some() {
                diffs.insert(i, tensor_pre(self.diff(i).unwrap(), n));
            }
        }
        Self::new(&self.ring, self.orientation, self.lo, slots, diffs).unwrap()
    }
}

/// `q`-subsets of `0..m` in colexicographic order.
pub fn colex_subsets(m: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for j in start..m {
            cur.push(j);
            rec(j + 1, m, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, q, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Koszul data: homogeneous elements of positive degree and a module.
#[derive(Clone, Debug)]
pub struct KoszulData<F: Field> {
    pub elements: Vec<Poly<F>>,
    pub module: FpModule<F>,
}

impl<F: Field> KoszulData<F> {
    pub fn new(elements: Vec<Poly<F>>, module: FpModule<F>) -> Result<Self> {
        let ring = module.ring();
        for (i, u) in elements.iter().enumerate() {
            if !ring.is_homogeneous(u) {
                return Err(Error::NotHomogeneous(ring.format(u)));
            }
            match ring.degree(u) {
                Some(d) if d > 0 => {}
                Some(_) => return Err(Error::InvalidInput(format!("element #{i} has degree 0"))),
                None => return Err(Error::InvalidInput(format!("element #{i} is zero"))),
            }
        }
        Ok(KoszulData { elements, module })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The data with the last element removed.
    pub fn prefix(&self) -> Self {
        let mut e = self.elements.clone();
        e.pop();
        KoszulData {
            elements: e,
            module: self.module.clone(),
        }
    }

    pub fn degrees(&self) -> Vec<i32> {
        let ring = self.module.ring();
        self.elements.iter().map(|u| ring.degree(u).unwrap()).collect()
    }
}

fn sign_pos(j: usize, set: &[usize]) -> bool {
    // (-1)^(pos+1) with 1-based pos: negative iff pos is even
    let pos = set.iter().position(|&x| x == j).unwrap() + 1;
    pos % 2 == 0
}

/// The Koszul complex; chain slots are `⊕ M(-deg u_S)`, cochain slots `⊕ M(deg u_S)`.
pub fn koszul<F: Field>(data: &KoszulData<F>, orientation: Orientation) -> BoundedComplex<F> {
    let m = data.len();
    let module = &data.module;
    let ring = module.ring();
    let degs = data.degrees();
    let n = module.ngens();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=m).map(|q| colex_subsets(m, q)).collect();
    let twist = |s: &[usize]| -> i32 { s.iter().map(|&j| degs[j]).sum() };
    let slot = |q: usize| -> FpModule<F> {
        let parts: Vec<FpModule<F>> = subsets[q]
            .iter()
            .map(|s| match orientation {
                Orientation::Chain => module.twist(-twist(s)),
                Orientation::Cochain => module.twist(twist(s)),
            })
            .collect();
        let refs: Vec<&FpModule<F>> = parts.iter().collect();
        if refs.is_empty() {
            FpModule::zero(ring)
        } else {
            FpModule::direct_sum(&refs)
        }
    };
    let slots: Vec<FpModule<F>> = (0..=m).map(slot).collect();
    let mut diffs = BTreeMap::new();
    for q in 1..=m {
        // faces of q-subsets
        let (big, small) = (&slots[q], &slots[q - 1]);
        let idx_small: BTreeMap<&Vec<usize>, usize> =
            subsets[q - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let (src, tgt) = match orientation {
            Orientation::Chain => (big.gens().to_vec(), small.gens().to_vec()),
            Orientation::Cochain => (small.gens().to_vec(), big.gens().to_vec()),
        };
        let mut b = BlockBuilder::new(ring, src, tgt);
        for (si, s) in subsets[q].iter().enumerate() {
            for &j in s {
                let face: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let ti = idx_small[&face];
                let neg = sign_pos(j, s);
                for e in 0..n {
                    match orientation {
                        Orientation::Chain => b.place_entry(ti * n + e, si * n + e, &data.elements[j], neg),
                        Orientation::Cochain => b.place_entry(si * n + e, ti * n + e, &data.elements[j], neg),
                    }
                }
            }
        }
        let key = match orientation {
            Orientation::Chain => q as i32,
            Orientation::Cochain => q as i32 - 1,
        };
        diffs.insert(key, b.finish());
    }
    BoundedComplex::new(ring, orientation, 0, slots, diffs).expect("Koszul complex is well formed")
}

/// Degree-0 chain map between complexes of the same orientation.
#[derive(Clone, Debug)]
pub struct ChainMap<F: Field> {
    pub source: BoundedComplex<F>,
    pub target: BoundedComplex<F>,
    /// Slot maps on generators; missing slots are zero.
    pub maps: BTreeMap<i32, Matrix<F>>,
}

impl<F: Field> ChainMap<F> {
    /// Checks commutation with the differentials; errors name the slot.
    pub fn new(source: BoundedComplex<F>, target: BoundedComplex<F>, maps: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        let cm = ChainMap { source, target, maps };
        cm.check()?;
        Ok(cm)
    }

    pub fn map(&self, i: i32) -> Matrix<F> {
        match self.maps.get(&i) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.source.degs(i), self.target.degs(i)),
        }
    }

    fn check(&self) -> Result<()> {
        let ring = self.source.ring().clone();
        let o = self.source.orientation();
        if o != self.target.orientation() {
            return Err(Error::InvalidInput("orientations differ".into()));
        }
        for i in self.source.indices().chain(self.target.indices()) {
            let f = self.map(i);
            if f.source != self.source.degs(i) || f.target != self.target.degs(i) {
                return Err(Error::NotChainMap(i));
            }
            let j = o.step(i);
            let Some(tj) = self.target.slot(j) else { continue };
            let lhs = match self.target.diff(i) {
                Some(d) if self.target.slot(i).is_some() => d.compose(&ring, &f),
                _ => Matrix::zero(f.source.clone(), tj.gens().to_vec()),
            };
            let fj = self.map(j);
            let rhs = match self.source.diff(i) {
                Some(d) if self.source.slot(j).is_some() => fj.compose(&ring, d),
                _ => Matrix::zero(f.source.clone(), tj.gens().to_vec()),
            };
            let diff = lhs.add(&ring, &rhs.neg(&ring));
            if !diff.cols().iter().all(|c| tj.is_zero_element(c)) {
                return Err(Error::NotChainMap(i));
            }
        }
        Ok(())
    }

    pub fn identity(c: &BoundedComplex<F>) -> Self {
        let maps = c
            .indices()
            .map(|i| (i, Matrix::identity(c.ring(), &c.degs(i))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    /// Multiplication by `p` from `C(-deg p)` to `C`.
    pub fn multiplication(c: &BoundedComplex<F>, p: &Poly<F>) -> Self {
        let dp = c.ring().degree(p).unwrap_or(0);
        let maps = c
            .indices()
            .map(|i| (i, Matrix::scalar(c.ring(), &c.degs(i), p)))
            .collect();
        ChainMap {
            source: c.twist(-dp),
            target: c.clone(),
            maps,
        }
    }
}

/// Mapping cone of a chain map between chain complexes, with its
/// inclusion of the target and projection onto the shifted source.
#[derive(Clone, Debug)]
pub struct Cone<F: Field> {
    pub complex: BoundedComplex<F>,
    pub inclusion: BTreeMap<i32, Matrix<F>>,
    pub projection: BTreeMap<i32, Matrix<F>>,
}

/// `Cone_n = C_{n-1} ⊕ D_n`, `d(c, x) = (-d c, f c + d x)`.
pub fn mapping_cone<F: Field>(f: &ChainMap<F>) -> Result<Cone<F>> {
    let (c, d) = (&f.source, &f.target);
    if c.orientation() != Orientation::Chain {
        return Err(Error::InvalidInput("mapping cone expects chain complexes".into()));
    }
    let ring = c.ring();
    let lo = (c.lo() + 1).min(d.lo());
    let hi = (c.hi() + 1).max(d.hi());
    let mut slots = Vec::new();
    let mut inclusion = BTreeMap::new();
    let mut projection = BTreeMap::new();
    for n in lo..=hi {
        let a = c.slot(n - 1).cloned().unwrap_or_else(|| FpModule::zero(ring));
        let b = d.slot(n).cloned().unwrap_or_else(|| FpModule::zero(ring));
        let s = FpModule::direct_sum(&[&a, &b]);
        let mut inc = BlockBuilder::new(ring, b.gens().to_vec(), s.gens().to_vec());
        inc.place(a.ngens(), 0, &Matrix::identity(ring, b.gens()), false);
        inclusion.insert(n, inc.finish());
        let mut pr = BlockBuilder::new(ring, s.gens().to_vec(), a.gens().to_vec());
        pr.place(0, 0, &Matrix::identity(ring, a.gens()), false);
        projection.insert(n, pr.finish());
        slots.push(s);
    }
    let mut diffs = BTreeMap::new();
    for n in (lo + 1)..=hi {
        let src = &slots[(n - lo) as usize];
        let tgt = &slots[(n - 1 - lo) as usize];
        let ca = c.degs(n - 1).len();
        let ta = c.degs(n - 2).len();
        let mut b = BlockBuilder::new(ring, src.gens().to_vec(), tgt.gens().to_vec());
        if ca > 0 && ta > 0 {
            b.place(0, 0, c.diff(n - 1).unwrap(), true);
        }
        if ca > 0 && !d.degs(n - 1).is_empty() {
            b.place(ta, 0, &f.map(n - 1), false);
        }
        if !d.degs(n).is_empty() && !d.degs(n - 1).is_empty() {
            b.place(ta, ca, d.diff(n).unwrap(), false);
        }
        diffs.insert(n, b.finish());
    }
    let complex = BoundedComplex::new(ring, Orientation::Chain, lo, slots, diffs)?;
    Ok(Cone {
        complex,
        inclusion,
        projection,
    })
}

/// Lengths of the Koszul homology modules and their alternating sum.
pub fn euler_characteristic<F: Field>(data: &KoszulData<F>) -> Result<(i64, Vec<u64>)> {
    let k = koszul(data, Orientation::Chain);
    let mut lengths = Vec::new();
    let mut chi = 0i64;
    for i in 0..=data.len() as i32 {
        let h = k.homology(i).module;
        let hd = h.hilbert();
        match hd.length() {
            Some(l) => {
                lengths.push(l);
                chi += if i % 2 == 0 { l as i64 } else { -(l as i64) };
            }
            None => {
                return Err(Error::NotIdealOfDefinition {
                    index: i as usize,
                    dim: hd.dim().map_or(-1, |d| d as i64),
                })
            }
        }
    }
    Ok((chi, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<Ring<Rationals>> {
        Arc::new(Ring::from_strs(Rationals, vars, rels).unwrap())
    }

    fn kos(a: &Arc<Ring<Rationals>>, u: &[&str], m: FpModule<Rationals>, o: Orientation) -> BoundedComplex<Rationals> {
        let els = u.iter().map(|s| a.parse(s).unwrap()).collect();
        koszul(&KoszulData::new(els, m).unwrap(), o)
    }

    #[test]
    fn colex_order() {
        assert_eq!(colex_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(colex_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn koszul_two_variables() {
        let a = ring(&["x", "y"], &[]);
        let k = kos(&a, &["x", "y"], FpModule::ring_module(&a), Orientation::Chain);
        assert_eq!(k.degs(0), vec![0]);
        assert_eq!(k.degs(1), vec![1, 1]);
        assert_eq!(k.degs(2), vec![2]);
        assert_eq!(k.diff(1).unwrap().to_strings(&a), vec![vec!["x", "y"]]);
        assert_eq!(k.diff(2).unwrap().to_strings(&a), vec![vec!["-y"], vec!["x"]]);
        k.verify().unwrap();
        assert!(k.homology(1).module.is_zero());
        assert_eq!(k.homology(0).module.length(), Some(1));
    }

    #[test]
    fn ex_thurs_homology() {
        let a = ring(&["x", "y"], &["x*y", "y^2"]);
        let k = kos(&a, &["y"], FpModule::ring_module(&a), Orientation::Chain);
        let h1 = k.homology(1);
        assert_eq!(h1.module.ngens(), 2);
        // (0 : y) = (x, y), twisted by 1
        assert_eq!(h1.module.hilbert_values(0, 5), vec![0, 0, 2, 1, 1, 1]);
        let h0 = k.homology(0);
        assert_eq!(h0.module.hilbert_values(0, 4), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn hypersurface_h1() {
        let a = ring(&["x", "y"], &["x^2"]);
        let k = kos(&a, &["x", "y"], FpModule::ring_module(&a), Orientation::Chain);
        let h = k.homology(1).module;
        assert_eq!(h.length(), Some(1));
        assert_eq!(h.gens(), &[2]);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let a = ring(&["x"], &[]);
        let k = kos(&a, &["x"], FpModule::ring_module(&a), Orientation::Chain);
        let c = mapping_cone(&ChainMap::identity(&k)).unwrap();
        c.complex.verify().unwrap();
        for i in c.complex.indices() {
            assert!(c.complex.homology(i).module.is_zero());
        }
    }

    #[test]
    fn cone_builds_koszul() {
        let a = ring(&["x", "y"], &[]);
        let k = kos(&a, &["y"], FpModule::ring_module(&a), Orientation::Chain);
        let c = mapping_cone(&ChainMap::multiplication(&k, &a.parse("x").unwrap())).unwrap();
        c.complex.verify().unwrap();
        let k2 = kos(&a, &["y", "x"], FpModule::ring_module(&a), Orientation::Chain);
        for i in 0..=2 {
            assert_eq!(c.complex.degs(i).len(), k2.degs(i).len());
            assert_eq!(
                c.complex.homology(i).module.hilbert_values(0, 4),
                k2.homology(i).module.hilbert_values(0, 4)
            );
        }
    }

    #[test]
    fn self_duality() {
        let a = ring(&["x", "y"], &[]);
        let k = kos(&a, &["x", "y"], FpModule::ring_module(&a), Orientation::Chain);
        let h = k.hom_into(&FpModule::ring_module(&a)).unwrap();
        let kc = kos(&a, &["x", "y"], FpModule::ring_module(&a), Orientation::Cochain);
        for i in 0..=2 {
            assert_eq!(h.degs(i), kc.degs(i));
            assert_eq!(
                h.homology(i).module.hilbert_values(-3, 3),
                kc.homology(i).module.hilbert_values(-3, 3)
            );
        }
        h.verify().unwrap();
    }

    #[test]
    fn euler_examples() {
        let a = ring(&["x", "y", "z"], &[]);
        let m = FpModule::cyclic(&a, &[a.parse("x").unwrap(), a.parse("y").unwrap()]).unwrap();
        let d = KoszulData::new(vec![a.parse("x").unwrap(), a.parse("z").unwrap()], m).unwrap();
        assert_eq!(euler_characteristic(&d).unwrap(), (0, vec![1, 1, 0]));
        let b = ring(&["x", "y"], &[]);
        let d = KoszulData::new(
            vec![b.parse("x^2").unwrap(), b.parse("y").unwrap()],
            FpModule::ring_module(&b),
        )
        .unwrap();
        assert_eq!(euler_characteristic(&d).unwrap().0, 2);
        let d = KoszulData::new(vec![b.parse("x").unwrap()], FpModule::ring_module(&b)).unwrap();
        assert!(matches!(euler_characteristic(&d), Err(Error::NotIdealOfDefinition { .. })));
    }
}
