//! Coefficient fields: prime fields with word-sized residues and the rationals.

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact arithmetic on the elements of a field.
///
/// The field value itself carries whatever context the elements need (the
/// modulus for a prime field), so elements stay small and `Copy`-like.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// `num / den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return Err(Error::InvalidInput(format!(
                "denominator {den} is zero in {}",
                self.spec()
            )));
        }
        Ok(self.mul(&self.from_bigint(num), &self.inv(&d)))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    /// Text form accepted back by the polynomial parser.
    fn format(&self, a: &Self::Elem) -> String;
    /// True when `a` prints with a leading minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn spec(&self) -> FieldSpec;
}

/// Descriptor of a coefficient field, as it appears in ring documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

pub const DEFAULT_PRIME: u32 = 32003;

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `Fp:p` and `Fp` (the default prime).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Q" | "QQ" => return Ok(FieldSpec::Rational),
            "Fp" => return Ok(FieldSpec::Prime(DEFAULT_PRIME)),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime in field spec `{s}`")))?;
            check_prime(p)?;
            return Ok(FieldSpec::Prime(p as u32));
        }
        Err(Error::InvalidInput(format!(
            "unknown field `{s}` (expected Q or Fp:p)"
        )))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rational => FieldRepr::Name("Q".into()).serialize(s),
            FieldSpec::Prime(p) => FieldRepr::Prime { fp: *p as u64 }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match FieldRepr::deserialize(d)? {
            FieldRepr::Name(n) => n.parse().map_err(serde::de::Error::custom),
            FieldRepr::Prime { fp } => {
                check_prime(fp).map_err(serde::de::Error::custom)?;
                Ok(FieldSpec::Prime(fp as u32))
            }
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || p > (1u64 << 31) {
        return Err(Error::InvalidInput(format!(
            "modulus {p} outside 2..=2^31"
        )));
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::InvalidInput(format!("modulus {p} is not prime")));
        }
        d += 1;
    }
    Ok(())
}

/// The prime field Z/p with p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(p as u64)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut b: u32, mut e: u64) -> u32 {
        let m = self.p as u64;
        let mut acc = 1u64;
        let mut base = b as u64 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        b = acc as u32;
        b
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in Fp");
        self.pow(*a, self.p as u64 - 2)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    /// Symmetric representative, so that `-1` prints as `-1`.
    fn format(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - *a)
        } else {
            a.to_string()
        }
    }
    fn is_negative(&self, a: &u32) -> bool {
        *a > self.p / 2
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

/// The rational numbers, stored in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!(
            "Fp:101".parse::<FieldSpec>().unwrap(),
            FieldSpec::Prime(101)
        );
        assert!("Fp:100".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        let j = serde_json::to_string(&FieldSpec::Prime(7)).unwrap();
        assert_eq!(j, r#"{"Fp":7}"#);
        let back: FieldSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, FieldSpec::Prime(7));
        let q: FieldSpec = serde_json::from_str("\"Q\"").unwrap();
        assert_eq!(q, FieldSpec::Rational);
    }

    #[test]
    fn prime_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in 1..200u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.format(&f.from_i64(-3)), "-3");
    }

    #[test]
    fn rationals_lowest_terms() {
        let q = Rationals;
        let a = q
            .from_ratio(&BigInt::from(6), &BigInt::from(-4))
            .unwrap();
        assert_eq!(q.format(&a), "-3/2");
        assert!(a.denom() > &BigInt::zero());
    }

    proptest! {
        #[test]
        fn prime_ring_axioms(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::new(32003).unwrap();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        }

        #[test]
        fn rational_ring_axioms(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let q = Rationals;
            let x = q.from_ratio(&BigInt::from(a), &BigInt::from(b)).unwrap();
            let y = q.from_ratio(&BigInt::from(c), &BigInt::from(d)).unwrap();
            let z = q.from_i64(a - c);
            prop_assert_eq!(q.mul(&q.mul(&x, &y), &z), q.mul(&x, &q.mul(&y, &z)));
            prop_assert_eq!(q.mul(&x, &q.add(&y, &z)), q.add(&q.mul(&x, &y), &q.mul(&x, &z)));
            if !q.is_zero(&y) {
                prop_assert_eq!(q.mul(&q.div(&x, &y), &y), x);
            }
        }
    }
}
