//! Fixtures for the criterion benchmarks in `benches/`.

use koszul_core::linalg::Mat;
use koszul_core::theorems::{Catalog, Instance};
use koszul_core::PrimeField;

pub const P: u32 = 32003;

pub fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

/// A bundled catalog instance over `F_32003`.
pub fn instance(id: &str) -> Instance<PrimeField> {
    Instance::load(Catalog::bundled().get(id).unwrap(), field()).unwrap()
}

/// Dense `rows x cols` matrix with pseudo-random entries and rank `min(rows, cols, rank)`.
pub fn dense(rows: usize, cols: usize, rank: usize) -> Mat<u32> {
    let f = field();
    let entry = |i: usize, j: usize| ((i * 7919 + j * 104_729 + i * j * 31) % P as usize) as u32;
    let left = Mat::from_columns(&f, rows, &(0..rank).map(|j| (0..rows).map(|i| entry(i, j)).collect()).collect::<Vec<_>>());
    let right = Mat::from_columns(&f, rank, &(0..cols).map(|j| (0..rank).map(|i| entry(i + 17, j + 5)).collect()).collect::<Vec<_>>());
    left.mul(&f, &right)
}
