//! Dense linear algebra over Z/p.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        let (mut acc, mut b, mut e) = (1u64, a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub(crate) struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn add_to(&mut self, f: Fp, i: usize, j: usize, v: u64) {
        let k = i * self.cols + j;
        self.data[k] = f.add(self.data[k], v);
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    #[cfg(test)]
    pub fn mul(&self, f: Fp, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b != 0 {
                        out.add_to(f, i, j, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Row echelon form in place (forward elimination only); returns the rank.
    fn eliminate(&mut self, f: Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let k = r * self.cols + j;
                self.data[k] = f.mul(self.data[k], inv);
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let k = i * self.cols + j;
                        self.data[k] = f.sub(self.data[k], f.mul(factor, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: Fp) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().eliminate(f).len()
    }

    /// Basis of `{x : self x = 0}`.
    pub fn kernel(&self, f: Fp) -> Vec<Vec<u64>> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![0; self.cols];
                    v[i] = 1;
                    v
                })
                .collect();
        }
        let mut m = self.clone();
        let pivots = m.eliminate(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }
}

/// A subspace of `k^n` in reduced echelon form, grown one vector at a time.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn reduce(&self, f: Fp, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    /// Adds `v`; false when it was already in the span.
    pub fn insert(&mut self, f: Fp, mut v: Vec<u64>) -> bool {
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank_agree() {
        let f = Fp { p: 7 };
        let m = Mat {
            rows: 2,
            cols: 3,
            data: vec![1, 2, 3, 2, 4, 6],
        };
        assert_eq!(m.rank(f), 1);
        let k = m.kernel(f);
        assert_eq!(k.len(), 2);
        for v in k {
            for i in 0..2 {
                let s = (0..3).fold(0, |acc, j| f.add(acc, f.mul(m.get(i, j), v[j])));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn echelon_spans() {
        let f = Fp { p: 5 };
        let mut e = Echelon::new();
        assert!(e.insert(f, vec![1, 1, 0]));
        assert!(e.insert(f, vec![0, 1, 1]));
        assert!(!e.insert(f, vec![1, 2, 1]));
        let mut v = vec![1, 0, 4];
        e.reduce(f, &mut v);
        assert!(v.iter().all(|&x| x == 0));
    }
}
