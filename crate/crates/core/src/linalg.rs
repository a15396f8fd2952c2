//! Dense exact linear algebra over a field: row reduction, kernels, and
//! subspaces of `k^n`.

use crate::field::Field;

/// Row-major dense matrix. A matrix with `rows = m`, `cols = n` is a map
/// `k^n -> k^m` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_columns<F: Field<Elem = E>>(f: &F, rows: usize, cols: &[Vec<E>]) -> Self {
        let mut m = Mat::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Mat<E>) -> Mat<E> {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        let nz: Vec<usize> = (0..v.len()).filter(|&j| !f.is_zero(&v[j])).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut s = f.zero();
                for &j in &nz {
                    if !f.is_zero(&row[j]) {
                        s = f.add(&s, &f.mul(&row[j], &v[j]));
                    }
                }
                s
            })
            .collect()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    /// Horizontal concatenation `[self | o]`.
    pub fn hcat(&self, o: &Mat<E>) -> Mat<E> {
        assert_eq!(self.rows, o.rows);
        let mut data = Vec::with_capacity(self.data.len() + o.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(o.row(i));
        }
        Mat {
            rows: self.rows,
            cols: self.cols + o.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&mut self, f: &F) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut sparse: Vec<Vec<(usize, E)>> = (0..rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !f.is_zero(x))
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        // unpivoted rows bucketed by leading column
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cols];
        for (i, r) in sparse.iter().enumerate() {
            if let Some(&(j, _)) = r.first() {
                buckets[j].push(i);
            }
        }
        let mut pivots = Vec::new();
        let mut prow = Vec::new();
        for c in 0..cols {
            let cand = std::mem::take(&mut buckets[c]);
            let Some(&p) = cand.iter().min_by_key(|&&i| sparse[i].len()) else {
                continue;
            };
            let inv = f.inv(&sparse[p][0].1);
            for e in sparse[p].iter_mut() {
                e.1 = f.mul(&e.1, &inv);
            }
            for &i in cand.iter().filter(|&&i| i != p) {
                let factor = sparse[i][0].1.clone();
                let out = axpy(f, &sparse[i], &factor, &sparse[p]);
                if let Some(&(j, _)) = out.first() {
                    buckets[j].push(i);
                }
                sparse[i] = out;
            }
            pivots.push(c);
            prow.push(p);
        }
        // back substitution against later pivots
        let mut is_pivot = vec![usize::MAX; cols];
        for (k, &c) in pivots.iter().enumerate() {
            is_pivot[c] = k;
        }
        let mut reduced: Vec<Vec<(usize, E)>> = vec![Vec::new(); pivots.len()];
        let mut scratch = vec![f.zero(); cols];
        for k in (0..pivots.len()).rev() {
            let row = &sparse[prow[k]];
            if row[1..].iter().all(|(j, _)| is_pivot[*j] == usize::MAX) {
                reduced[k] = row.clone();
                continue;
            }
            for (j, x) in row {
                scratch[*j] = x.clone();
            }
            for j in pivots[k] + 1..cols {
                let kk = is_pivot[j];
                if kk == usize::MAX || f.is_zero(&scratch[j]) {
                    continue;
                }
                let factor = scratch[j].clone();
                for (jj, v) in &reduced[kk] {
                    scratch[*jj] = f.sub(&scratch[*jj], &f.mul(&factor, v));
                }
            }
            let mut out = Vec::new();
            for (j, x) in scratch.iter_mut().enumerate().skip(pivots[k]) {
                if !f.is_zero(x) {
                    out.push((j, std::mem::replace(x, f.zero())));
                }
            }
            reduced[k] = out;
        }
        for x in self.data.iter_mut() {
            *x = f.zero();
        }
        for (k, r) in reduced.into_iter().enumerate() {
            for (j, x) in r {
                self.data[k * cols + j] = x;
            }
        }
        pivots
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref(f).len()
    }

    /// Basis of the null space `{x : self * x = 0}`.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }
}

/// `a - factor * b` on sorted sparse rows.
fn axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], factor: &F::Elem, b: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                let v = f.sub(&x.1, &f.mul(factor, &y.1));
                if !f.is_zero(&v) {
                    out.push((x.0, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                out.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y.0, f.neg(&f.mul(factor, &y.1))));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// A subspace of `k^n`, stored as the nonzero rows of a reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    pub ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![f.zero(); ambient];
                v[i] = f.one();
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<F: Field<Elem = E>>(f: &F, ambient: usize, vecs: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for v in vecs {
            assert_eq!(v.len(), ambient);
            data.extend(v);
            rows += 1;
        }
        if rows == 0 || ambient == 0 {
            return Subspace::zero(ambient);
        }
        let mut m = Mat {
            rows,
            cols: ambient,
            data,
        };
        let pivots = m.rref(f);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Reduce `v` against the echelon rows; zero iff `v` lies in the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    pub fn contains_space<F: Field<Elem = E>>(&self, f: &F, o: &Subspace<E>) -> bool {
        o.rows.iter().all(|r| self.contains(f, r))
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, o: &Subspace<E>) -> Subspace<E> {
        assert_eq!(self.ambient, o.ambient);
        if o.dim() == 0 {
            return self.clone();
        }
        if self.dim() == 0 {
            return o.clone();
        }
        Subspace::span(f, self.ambient, self.rows.iter().chain(&o.rows).cloned())
    }

    pub fn intersect<F: Field<Elem = E>>(&self, f: &F, o: &Subspace<E>) -> Subspace<E> {
        if self.dim() == 0 || o.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns: basis of self, then basis of o; kernel gives the relations
        let cols: Vec<Vec<E>> = self.rows.iter().chain(&o.rows).cloned().collect();
        let m = Mat::from_columns(f, self.ambient, &cols);
        let ker = m.kernel(f);
        let a = self.dim();
        let vecs = ker.into_iter().map(|c| {
            let mut v = vec![f.zero(); self.ambient];
            for (coef, row) in c[..a].iter().zip(&self.rows) {
                if f.is_zero(coef) {
                    continue;
                }
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.add(x, &f.mul(coef, r));
                }
            }
            v
        });
        Subspace::span(f, self.ambient, vecs)
    }

    /// Image under `t`, a `m x ambient` matrix.
    pub fn image<F: Field<Elem = E>>(&self, f: &F, t: &Mat<E>) -> Subspace<E> {
        assert_eq!(t.cols, self.ambient);
        Subspace::span(f, t.rows, self.rows.iter().map(|r| t.apply(f, r)))
    }

    /// `{x in k^(t.cols) : t x in self}`.
    pub fn preimage<F: Field<Elem = E>>(&self, f: &F, t: &Mat<E>) -> Subspace<E> {
        assert_eq!(t.rows, self.ambient);
        let n = t.cols;
        if n == 0 {
            return Subspace::zero(0);
        }
        let mut cols: Vec<Vec<E>> = (0..n).map(|j| t.column(j)).collect();
        cols.extend(self.rows.iter().cloned());
        let m = Mat::from_columns(f, self.ambient, &cols);
        let ker = m.kernel(f);
        Subspace::span(f, n, ker.into_iter().map(|v| v[..n].to_vec()))
    }
}

impl<E: Clone + PartialEq> Subspace<E> {
    /// Image under the coordinate embedding `k^dim -> k^ambient` onto the
    /// increasing positions `idx`.
    pub fn embed<F: Field<Elem = E>>(&self, f: &F, ambient: usize, idx: &[usize]) -> Subspace<E> {
        assert_eq!(idx.len(), self.ambient);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![f.zero(); ambient];
                for (x, &i) in r.iter().zip(idx) {
                    v[i] = x.clone();
                }
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: self.pivots.iter().map(|&p| idx[p]).collect(),
        }
    }

    /// Image under the coordinate projection onto the positions `idx`.
    pub fn project<F: Field<Elem = E>>(&self, f: &F, idx: &[usize]) -> Subspace<E> {
        Subspace::span(f, idx.len(), self.rows.iter().map(|r| idx.iter().map(|&i| r[i].clone()).collect()))
    }

    /// `{x in k^ambient : x restricted to idx lies in self}`, for increasing `idx`.
    pub fn preimage_of_projection<F: Field<Elem = E>>(&self, f: &F, ambient: usize, idx: &[usize]) -> Subspace<E> {
        let e = self.embed(f, ambient, idx);
        let mut kept = vec![false; ambient];
        for &i in idx {
            kept[i] = true;
        }
        let mut all: Vec<(usize, Vec<E>)> = e.pivots.into_iter().zip(e.rows).collect();
        for j in (0..ambient).filter(|&j| !kept[j]) {
            let mut v = vec![f.zero(); ambient];
            v[j] = f.one();
            all.push((j, v));
        }
        all.sort_by_key(|(p, _)| *p);
        let (pivots, rows) = all.into_iter().unzip();
        Subspace { ambient, rows, pivots }
    }

    /// `{a in k^(idx.len()) : embed(a) lies in self}`, for increasing `idx`.
    pub fn preimage_of_embedding<F: Field<Elem = E>>(&self, f: &F, idx: &[usize]) -> Subspace<E> {
        let n = idx.len();
        if self.dim() == 0 || n == 0 {
            return Subspace::zero(n);
        }
        let mut kept = vec![false; self.ambient];
        for &i in idx {
            kept[i] = true;
        }
        // outside coordinates first, so rows free of them come last
        let order: Vec<usize> = (0..self.ambient).filter(|&j| !kept[j]).chain(idx.iter().copied()).collect();
        let outside = self.ambient - n;
        let mut data = Vec::with_capacity(self.dim() * self.ambient);
        for r in &self.rows {
            data.extend(order.iter().map(|&j| r[j].clone()));
        }
        let mut m = Mat {
            rows: self.dim(),
            cols: self.ambient,
            data,
        };
        let piv = m.rref(f);
        let rows = piv
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= outside)
            .map(|(k, _)| m.row(k)[outside..].to_vec())
            .collect::<Vec<_>>();
        Subspace::span(f, n, rows)
    }
}

/// Column space of `t` as a subspace of `k^(t.rows)`.
pub fn column_space<F: Field>(f: &F, t: &Mat<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(f, t.rows, (0..t.cols).map(|j| t.column(j)))
}

/// Null space of `t` as a subspace of `k^(t.cols)`.
pub fn null_space<F: Field>(f: &F, t: &Mat<F::Elem>) -> Subspace<F::Elem> {
    if t.rows == 0 {
        return Subspace::full(f, t.cols);
    }
    Subspace::span(f, t.cols, t.kernel(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(0u32..5, 36)) {
            let f = PrimeField::new(5).unwrap();
            let data: Vec<u32> = seed.into_iter().take(rows * cols).collect();
            let m = Mat { rows, cols, data };
            let r = m.rank(&f);
            let k = m.kernel(&f);
            prop_assert_eq!(r + k.len(), cols);
            for v in &k {
                prop_assert!(m.apply(&f, v).iter().all(|x| *x == 0));
            }
        }

        #[test]
        fn intersection_dimension(a in proptest::collection::vec(0u32..3, 12), b in proptest::collection::vec(0u32..3, 12)) {
            let f = PrimeField::new(3).unwrap();
            let u = Subspace::span(&f, 4, a.chunks(4).map(|c| c.to_vec()));
            let w = Subspace::span(&f, 4, b.chunks(4).map(|c| c.to_vec()));
            let i = u.intersect(&f, &w);
            let s = u.sum(&f, &w);
            prop_assert_eq!(u.dim() + w.dim(), i.dim() + s.dim());
            prop_assert!(u.contains_space(&f, &i) && w.contains_space(&f, &i));
        }
    }
}
