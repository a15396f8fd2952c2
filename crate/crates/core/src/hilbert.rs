//! Hilbert series of monomial ideals and graded modules, with Krull
//! dimension and length read off the numerator.

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::groebner::Gb;
use crate::monomial::Monomial;

/// A Laurent polynomial `sum coeffs[i] t^(low+i)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Laurent {
    pub low: i32,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn from_poly(coeffs: Vec<i64>) -> Self {
        Laurent { low: 0, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Laurent::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i32) -> i64 {
        let k = d - self.low;
        if k < 0 {
            0
        } else {
            self.coeffs.get(k as usize).copied().unwrap_or(0)
        }
    }

    pub fn high(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high().unwrap().max(o.high().unwrap());
        let coeffs = (low..=high).map(|d| self.coeff(d) + o.coeff(d)).collect();
        Laurent { low, coeffs }.normalized()
    }

    pub fn shift(&self, k: i32) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact quotient by `1 - t`, when `t = 1` is a root.
    fn div_one_minus_t(&self) -> Option<Laurent> {
        if self.is_zero() || self.eval_one() != 0 {
            return None;
        }
        // q_k = sum_{j<=k} n_j
        let mut q = Vec::with_capacity(self.coeffs.len());
        let mut acc = 0;
        for &c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            q.push(acc);
        }
        Some(Laurent { low: self.low, coeffs: q }.normalized())
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0))
        .collect()
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t) / prod (1 - t^w_i)` of
/// `S / J` for the monomial ideal `J` generated by `gens`.
pub fn monomial_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let n = minimalize(gens.to_vec());
    numerator_rec(n, weights)
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let nv = weights.len();
    let mut counts = vec![0usize; nv];
    for g in &gens {
        for (i, &e) in g.exps().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (best, &cnt) = counts
        .iter()
        .enumerate()
        .max_by_key(|(i, &c)| (c, std::cmp::Reverse(*i)))
        .unwrap();
    if cnt <= 1 {
        // pairwise coprime: a product of (1 - t^deg)
        let mut acc = vec![1];
        for g in &gens {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    let mut es: Vec<u16> = gens
        .iter()
        .filter(|g| {
            let e = g.exps();
            e[best] > 0 && e.iter().enumerate().any(|(i, &x)| i != best && x > 0)
        })
        .map(|g| g.exps()[best])
        .collect();
    if es.is_empty() {
        es = gens.iter().map(|g| g.exps()[best]).filter(|&e| e > 0).collect();
    }
    es.sort_unstable();
    let e = es[es.len() / 2].max(1);
    let mut pe = vec![0u16; nv];
    pe[best] = e;
    let pivot = Monomial::from_exps(&pe, weights);

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut x = g.exps().to_vec();
            x[best] = x[best].saturating_sub(e);
            Monomial::from_exps(&x, weights)
        })
        .collect();
    let a = numerator_rec(minimalize(plus), weights);
    let b = numerator_rec(minimalize(colon), weights);
    let mut shifted = vec![0; pivot.degree() as usize];
    shifted.extend(b);
    poly_add(&a, &shifted)
}

/// Hilbert series data of a graded module `F / U` given a Gröbner basis of
/// `U` on a free module with generator degrees `shifts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub weights: Vec<u32>,
    pub numerator: Laurent,
}

impl HilbertData {
    pub fn from_gb<F: Field>(gb: &Gb<F>, weights: &[u32]) -> Self {
        let mut num = Laurent::zero();
        for (c, &s) in gb.order().shifts.iter().enumerate() {
            let lts = gb.leading_monomials(c as u32);
            let part = Laurent::from_poly(monomial_numerator(&lts, weights)).shift(s);
            num = num.add(&part);
        }
        HilbertData {
            weights: weights.to_vec(),
            numerator: num,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Krull dimension; `None` for the zero module.
    pub fn dim(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.numerator.clone();
        let mut ord = 0;
        while let Some(q) = n.div_one_minus_t() {
            n = q;
            ord += 1;
        }
        Some(self.weights.len() - ord)
    }

    /// Total k-dimension when finite.
    pub fn length(&self) -> Option<u64> {
        match self.dim() {
            None => Some(0),
            Some(0) => {
                let mut n = self.numerator.clone();
                for _ in 0..self.weights.len() {
                    n = n.div_one_minus_t().expect("root at 1");
                }
                let w: i64 = self.weights.iter().map(|&w| w as i64).product();
                Some((n.eval_one() / w) as u64)
            }
            Some(_) => None,
        }
    }

    /// dim of the homogeneous pieces in degrees `lo..=hi`.
    pub fn values(&self, lo: i32, hi: i32) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        if self.is_zero() {
            return vec![0; (hi - lo + 1) as usize];
        }
        let base = self.numerator.low;
        let top = (hi - base).max(0) as usize;
        // number of monomials of each weighted degree up to `top`
        let mut count = vec![0i64; top + 1];
        count[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for d in w..=top {
                count[d] += count[d - w];
            }
        }
        (lo..=hi)
            .map(|d| {
                let mut s = 0;
                for (i, &c) in self.numerator.coeffs.iter().enumerate() {
                    let k = d - base - i as i32;
                    if k >= 0 && (k as usize) <= top {
                        s += c * count[k as usize];
                    }
                }
                s
            })
            .collect()
    }

    pub fn value(&self, d: i32) -> i64 {
        self.values(d, d)[0]
    }

    /// Lowest possibly nonzero degree.
    pub fn low(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.numerator.low)
    }

    /// Highest nonzero degree of a finite-length module.
    pub fn top(&self) -> Option<i32> {
        if self.length()? == 0 {
            return None;
        }
        let lo = self.numerator.low;
        let bound = lo + self.numerator.coeffs.len() as i32;
        let vals = self.values(lo, bound);
        vals.iter()
            .rposition(|&v| v != 0)
            .map(|i| lo + i as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::ring::Ring;

    fn data(vars: &[&str], rels: &[&str]) -> HilbertData {
        let r = Ring::from_strs(Rationals, vars, rels).unwrap();
        HilbertData::from_gb(r.gb(), r.weights())
    }

    #[test]
    fn ring_examples() {
        let h = data(&["x", "y"], &["x*y", "y^2"]);
        assert_eq!(h.dim(), Some(1));
        assert_eq!(h.values(0, 4), vec![1, 2, 1, 1, 1]);
        let h = data(&["x"], &["x^2"]);
        assert_eq!(h.dim(), Some(0));
        assert_eq!(h.length(), Some(2));
        let h = data(&["x", "y", "z"], &["x*y", "x*z", "y*z"]);
        assert_eq!(h.dim(), Some(1));
        assert_eq!(h.values(0, 3), vec![1, 3, 3, 3]);
        let h = data(&["x", "y", "z"], &[]);
        assert_eq!(h.dim(), Some(3));
        assert_eq!(h.values(0, 2), vec![1, 3, 6]);
    }

    #[test]
    fn weighted() {
        let r = Ring::new(
            Rationals,
            vec![("x".into(), 1), ("y".into(), 2)],
            vec![],
            Default::default(),
        )
        .unwrap();
        let r = r.quotient(&[r.parse("y^2").unwrap(), r.parse("x^3").unwrap()]).unwrap();
        let h = HilbertData::from_gb(r.gb(), r.weights());
        assert_eq!(h.dim(), Some(0));
        assert_eq!(h.length(), Some(6));
        assert_eq!(h.values(0, 5), vec![1, 1, 2, 1, 1, 0]);
        assert_eq!(h.top(), Some(4));
    }
}
