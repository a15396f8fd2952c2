//! Invariants on random monomial quotients of k[x,y,z].

use std::sync::Arc;

use koszul_core::complex::{koszul, KoszulData, Orientation};
use koszul_core::homalg::tor;
use koszul_core::io::{from_json, to_json, ModuleDoc};
use koszul_core::module::FpModule;
use koszul_core::{PrimeField, Ring};
use koszul_oracle::Oracle;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];
const WINDOW: (i32, i32) = (0, 6);

fn mono(e: &[u32]) -> String {
    let parts: Vec<String> = VARS
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

/// Monomials of degree at least `min`.
fn monos(min: u32, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::array::uniform3(0u32..3), count)
        .prop_map(move |v| v.into_iter().filter(|e| e.iter().sum::<u32>() >= min).map(|e| mono(&e)).collect())
}

#[derive(Debug)]
struct Case {
    ring: Arc<Ring<PrimeField>>,
    m: FpModule<PrimeField>,
    u: Vec<koszul_core::Poly<PrimeField>>,
}

fn case() -> impl Strategy<Value = Case> {
    (monos(2, 0..3), monos(1, 1..3), prop::sample::subsequence(vec![0usize, 1, 2], 1..=3)).prop_map(|(rels, ideal, u)| {
        let rels: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
        let ring = Arc::new(Ring::from_strs(PrimeField::new(32003).unwrap(), &VARS, &rels).unwrap());
        let ideal: Vec<_> = ideal.iter().map(|s| ring.parse(s).unwrap()).collect();
        let m = FpModule::cyclic(&ring, &ideal).unwrap();
        let u = u.into_iter().map(|i| ring.var(i)).collect();
        Case { ring, m, u }
    })
}

fn hv(m: &FpModule<PrimeField>) -> Vec<i64> {
    m.hilbert_values(WINDOW.0, WINDOW.1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn koszul_homology_matches_oracle(c in case()) {
        let o = Oracle::new(&c.ring);
        let om = o.module(&c.m);
        let k = koszul(&KoszulData::new(c.u.clone(), c.m.clone()).unwrap(), Orientation::Chain);
        let n = c.u.len();
        let core: Vec<Vec<usize>> = (0..=n as i32).map(|i| hv(&k.homology(i).module).into_iter().map(|d| d as usize).collect()).collect();
        prop_assert_eq!(core, o.koszul_homology(&c.u, &om, n, WINDOW));
    }

    #[test]
    fn graded_euler_characteristic(c in case()) {
        let k = koszul(&KoszulData::new(c.u.clone(), c.m.clone()).unwrap(), Orientation::Chain);
        let mut chains = vec![0i64; (WINDOW.1 - WINDOW.0 + 1) as usize];
        let mut homs = chains.clone();
        for i in k.indices() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            for (t, d) in hv(k.slot(i).unwrap()).into_iter().enumerate() {
                chains[t] += s * d;
            }
            for (t, d) in hv(&k.homology(i).module).into_iter().enumerate() {
                homs[t] += s * d;
            }
        }
        prop_assert_eq!(chains, homs);
    }

    #[test]
    fn tor_is_symmetric_and_matches_oracle(c in case()) {
        let k = FpModule::residue_field(&c.ring);
        let o = Oracle::new(&c.ring);
        let want = o.tor(&o.module(&c.m), &o.module(&k), 2, WINDOW);
        for i in 0..=2 {
            let a: Vec<usize> = hv(&tor(&c.m, &k, i, 2).unwrap().module).into_iter().map(|d| d as usize).collect();
            let b: Vec<usize> = hv(&tor(&k, &c.m, i, 2).unwrap().module).into_iter().map(|d| d as usize).collect();
            prop_assert_eq!(&a, &want[i]);
            prop_assert_eq!(&a, &b);
        }
    }

    #[test]
    fn generator_order_does_not_matter(c in case()) {
        let k = FpModule::residue_field(&c.ring);
        let a = FpModule::ring_module(&c.ring).twist(-1);
        let mk = FpModule::direct_sum(&[&c.m, &a]);
        let km = FpModule::direct_sum(&[&a, &c.m]);
        for i in 0..=2 {
            let x = hv(&tor(&mk, &k, i, 2).unwrap().module);
            let y = hv(&tor(&km, &k, i, 2).unwrap().module);
            let parts: Vec<i64> = hv(&tor(&c.m, &k, i, 2).unwrap().module)
                .iter()
                .zip(hv(&tor(&a, &k, i, 2).unwrap().module))
                .map(|(p, q)| p + q)
                .collect();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(&x, &parts);
        }
    }

    #[test]
    fn twisting_shifts_hilbert_functions(c in case(), s in -2i32..3) {
        let t = c.m.twist(s);
        prop_assert_eq!(t.hilbert_values(WINDOW.0, WINDOW.1), c.m.hilbert_values(WINDOW.0 + s, WINDOW.1 + s));
    }

    #[test]
    fn module_documents_round_trip(c in case()) {
        let doc = ModuleDoc::of(&c.m);
        let back: ModuleDoc = from_json(&to_json(&doc)).unwrap();
        prop_assert_eq!(&back, &doc);
        let m = back.build(&c.ring).unwrap();
        prop_assert_eq!(hv(&m), hv(&c.m));
    }

    #[test]
    fn polynomials_print_and_parse(c in case()) {
        for p in c.m.rels().iter().map(|r| r.component(0)).chain(c.u.iter().cloned()) {
            prop_assert_eq!(c.ring.parse(&c.ring.format(&p)).unwrap(), p);
        }
    }
}
