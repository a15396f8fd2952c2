//! Hypothesis tags and their computational verification.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::checks::{koszul_homology, pd_decided, Pd};
use super::Instance;
use crate::error::Result;
use crate::field::Field;
use crate::homalg::annihilator;
use crate::invariants::{bass_numbers, depth, grade, minimal_ideal_generators, Grade};
use crate::module::FpModule;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Cm,
    NotCm,
    Gorenstein,
    Regular,
    Hypersurface,
    NonHypersurface,
    Reduced,
    /// `A/I` is Cohen–Macaulay.
    QuotientCm,
    /// Every nonzero `H_i(I)` is perfect.
    PerfectKoszul,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        f.write_str(s.as_str().unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TagStatus {
    Verified,
    Refuted,
    /// No certificate either way.
    Unknown,
}

fn status(b: bool) -> TagStatus {
    if b {
        TagStatus::Verified
    } else {
        TagStatus::Refuted
    }
}

pub fn is_cm<F: Field>(m: &FpModule<F>) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    Ok(Some(depth(m)?) == m.dim())
}

/// Embedding dimension `mu(m)`.
pub fn embedding_dim<F: Field>(ring: &Ring<F>, a: &FpModule<F>) -> usize {
    minimal_ideal_generators(a, &ring.vars()).len()
}

/// Number of minimal generators of degree at least two of the defining ideal.
fn nonlinear_relations<F: Field>(ring: &Ring<F>) -> Result<usize> {
    let names: Vec<&str> = ring.names().iter().map(|s| s.as_str()).collect();
    let s = std::sync::Arc::new(Ring::polynomial_ring(ring.field().clone(), &names)?);
    let mut rels = Vec::new();
    for r in ring.relations() {
        rels.push(s.parse(&ring.format(r))?);
    }
    let sm = FpModule::ring_module(&s);
    Ok(minimal_ideal_generators(&sm, &rels)
        .iter()
        .filter(|p| s.degree(p).unwrap_or(0) >= 2)
        .count())
}

/// Whether `M` is perfect: finite projective dimension equal to its grade.
pub fn is_perfect<F: Field>(m: &FpModule<F>, depth_a: usize) -> Result<bool> {
    let ring = m.ring();
    let a = FpModule::ring_module(ring);
    match pd_decided(m, depth_a) {
        Pd::Infinite => Ok(false),
        Pd::Finite(p) => Ok(grade(&annihilator(m), &a)? == Grade::Finite(p)),
    }
}

pub fn verify<F: Field>(inst: &Instance<F>, t: Tag) -> Result<TagStatus> {
    let ring = &inst.ring;
    let a = inst.a();
    let d = a.dim().unwrap_or(0);
    let depth_a = depth(a)?;
    let regular = embedding_dim(ring, a) == d;
    Ok(match t {
        Tag::Cm => status(depth_a == d),
        Tag::NotCm => status(depth_a < d),
        Tag::Gorenstein => status(depth_a == d && bass_numbers(a, d)[d] == 1),
        Tag::Regular => status(regular),
        Tag::Hypersurface => status(!regular && nonlinear_relations(ring)? == 1),
        Tag::NonHypersurface => status(!regular && nonlinear_relations(ring)? != 1),
        Tag::Reduced => {
            let lead = ring.gb().leading_monomials(0);
            if lead.iter().all(|m| m.exps().iter().all(|&e| e <= 1)) {
                TagStatus::Verified
            } else {
                TagStatus::Unknown
            }
        }
        Tag::QuotientCm => status(is_cm(&FpModule::cyclic(ring, &inst.ideal)?)?),
        Tag::PerfectKoszul => {
            let mut ok = true;
            for h in koszul_homology(&inst.ideal, a)? {
                if !h.is_zero() && !is_perfect(&h, depth_a)? {
                    ok = false;
                    break;
                }
            }
            status(ok)
        }
    })
}
