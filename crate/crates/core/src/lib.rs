//! Exact graded commutative algebra over quotients of polynomial rings.

pub mod complex;
pub mod cxres;
pub mod double;
pub mod error;
pub mod field;
pub mod functor;
pub mod graded;
pub mod groebner;
pub mod hilbert;
pub mod homalg;
pub mod hyper;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod report;
pub mod resolution;
pub mod ring;
pub mod theorems;
pub mod vector;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use ring::{Poly, Ring, RingDoc};
