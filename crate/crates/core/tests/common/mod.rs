//! Graded dimensions from the Gröbner machinery against the dense
//! degreewise oracle.

use koszul_core::complex::{koszul, KoszulData, Orientation};
use koszul_core::homalg::{ext, tor};
use koszul_core::hyper::{compute_u, compute_v, compute_w};
use koszul_core::module::Subquotient;
use koszul_core::theorems::{Catalog, Instance};
use koszul_core::PrimeField;
use koszul_oracle::Oracle;

pub const WINDOW: (i32, i32) = (-5, 5);
pub const NMAX: usize = 3;
pub const BUDGET: i64 = 500;

fn dims(s: &Subquotient<PrimeField>) -> Vec<usize> {
    s.module.hilbert_values(WINDOW.0, WINDOW.1).into_iter().map(|d| d as usize).collect()
}

struct Cmp<'a> {
    id: &'a str,
    compared: usize,
}

impl Cmp<'_> {
    fn eq(&mut self, what: &str, core: Vec<Vec<usize>>, oracle: Vec<Vec<usize>>) {
        assert_eq!(core, oracle, "{}: {what}", self.id);
        self.compared += 1;
    }
}

/// Total dimension in the window of the Koszul cochain complex `K^•(u; A)`,
/// the largest complex any comparison builds over `A`.
fn window_dim(inst: &Instance<PrimeField>) -> i64 {
    let ring = &inst.ring;
    let degs: Vec<i32> = inst.ideal.iter().map(|p| ring.degree(p).unwrap()).collect();
    let a = inst.a();
    (0u32..1 << degs.len())
        .map(|s| {
            let d: i32 = (0..degs.len()).filter(|j| s >> j & 1 == 1).map(|j| degs[j]).sum();
            a.hilbert_values(WINDOW.0 + d, WINDOW.1 + d).iter().sum::<i64>()
        })
        .sum()
}

fn small(inst: &Instance<PrimeField>) -> bool {
    window_dim(inst) <= BUDGET
}

/// Number of dimension tables compared on `id`; zero when the instance is
/// over budget. Panics on the first disagreement.
pub fn compare_instance(id: &str) -> usize {
    let cat = Catalog::bundled();
    let inst = Instance::load(cat.get(id).unwrap(), PrimeField::new(32003).unwrap()).unwrap();
    if !small(&inst) {
        return 0;
    }
    let o = Oracle::new(&inst.ring);
    let u = &inst.ideal;
    let mut cmp = Cmp { id, compared: 0 };
    for (name, m) in inst.modules.iter() {
        let om = o.module(m);
        assert_eq!(
            m.hilbert_values(WINDOW.0, WINDOW.1).into_iter().map(|d| d as usize).collect::<Vec<_>>(),
            om.hilbert(WINDOW.0, WINDOW.1),
            "{id}: Hilbert function of {name}"
        );
        let data = KoszulData::new(u.clone(), m.clone()).unwrap();
        let ch = koszul(&data, Orientation::Chain);
        let co = koszul(&data, Orientation::Cochain);
        let hc: Vec<Vec<usize>> = (0..=NMAX as i32).map(|i| dims(&ch.homology(i))).collect();
        let hk: Vec<Vec<usize>> = (0..=NMAX as i32).map(|i| dims(&co.homology(i))).collect();
        cmp.eq(&format!("H_*(u; {name})"), hc, o.koszul_homology(u, &om, NMAX, WINDOW));
        cmp.eq(&format!("H^*(u; {name})"), hk, o.koszul_cohomology(u, &om, NMAX, WINDOW));
    }
    for (mn, m) in inst.modules.iter() {
        let om = o.module(m);
        for (nn, n) in inst.modules.iter() {
            let on = o.module(n);
            let e: Vec<Vec<usize>> = (0..=NMAX).map(|i| dims(&ext(m, n, i, NMAX).unwrap())).collect();
            cmp.eq(&format!("Ext({mn}, {nn})"), e, o.ext(&om, &on, NMAX, WINDOW));
            let t: Vec<Vec<usize>> = (0..=NMAX).map(|i| dims(&tor(m, n, i, NMAX).unwrap())).collect();
            cmp.eq(&format!("Tor({mn}, {nn})"), t, o.tor(&om, &on, NMAX, WINDOW));
            let v: Vec<Vec<usize>> = (0..=NMAX).map(|i| dims(&compute_v(u, n, m, i, NMAX).unwrap().value)).collect();
            cmp.eq(&format!("V(u, {nn}, {mn})"), v, o.v(u, &on, &om, NMAX, WINDOW));
            let uu: Vec<Vec<usize>> = (0..=NMAX).map(|i| dims(&compute_u(u, m, n, i, NMAX).unwrap().value)).collect();
            cmp.eq(&format!("U(u, {mn}, {nn})"), uu, o.u(u, &om, &on, NMAX, WINDOW));
            let w: Vec<Vec<usize>> = (0..=NMAX).map(|i| dims(&compute_w(u, m, n, i, NMAX).unwrap().value)).collect();
            cmp.eq(&format!("W(u, {mn}, {nn})"), w, o.w(u, &om, &on, NMAX, WINDOW));
        }
    }
    cmp.compared
}

