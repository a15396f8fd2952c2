//! Monomials with cached weighted degree, and the monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
    deg: i32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn from_exps(exps: &[u16], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i32 * w as i32)
            .sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut m = Monomial::one(weights.len());
        m.exps[i] = 1;
        m.deg = weights[i] as i32;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> i32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + o.deg,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !o.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            deg: self.deg - o.deg,
        })
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, o: &Monomial) -> Monomial {
        self.div(o).expect("monomial divisibility")
    }

    pub fn lcm(&self, o: &Monomial, weights: &[u32]) -> Monomial {
        let exps: SmallVec<[u16; 8]> = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i32 * w as i32)
            .sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, o: &Monomial, weights: &[u32]) -> Monomial {
        let exps: SmallVec<[u16; 8]> = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i32 * w as i32)
            .sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&o.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial orders. Every order is degree-compatible; `Lex` is the
/// degree-refined lexicographic order, which agrees with pure lex on the
/// homogeneous data this crate deals with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    /// `Greater` means `a` is the larger monomial.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.deg.cmp(&b.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        match self {
            MonomialOrder::Grevlex => {
                for i in (0..a.exps.len()).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let w = [1, 1, 1];
        let m = |e: &[u16]| Monomial::from_exps(e, &w);
        let o = MonomialOrder::Grevlex;
        // x^2 > xy > y^2 > xz > yz > z^2
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for p in seq.windows(2) {
            assert_eq!(o.cmp(&p[0], &p[1]), Ordering::Greater);
        }
        // lex puts xz above y^2
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn weighted_degree() {
        let w = [1, 2];
        let m = Monomial::from_exps(&[3, 2], &w);
        assert_eq!(m.degree(), 7);
        let l = m.lcm(&Monomial::from_exps(&[1, 4], &w), &w);
        assert_eq!(l.exps(), &[3, 4]);
        assert_eq!(l.degree(), 11);
    }
}
