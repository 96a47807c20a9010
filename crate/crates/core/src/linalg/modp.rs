use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::rational::Q;

/// 2^61 - 1.
pub const M61: u64 = (1 << 61) - 1;

/// Primes below 2^62 used by the modular algorithms, `M61` first.
pub const PRIMES: [u64; 6] = [
    M61,
    4611686018427387847,
    4611686018427387817,
    2305843009213693921,
    4611686018427387787,
    2305843009213693907,
];

/// The field Z/pZ for a prime `p < 2^62`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 62));
        Zp { p }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        let x = a as u128 * b as u128;
        if self.p == M61 {
            let r = (x as u64 & M61) + (x >> 61) as u64;
            if r >= M61 {
                r - M61
            } else {
                r
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        r % self.p
    }

    pub fn from_bigint(self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        a.mod_floor(&p).to_u64().unwrap()
    }

    /// Reduction of a rational, `None` when p divides the denominator.
    pub fn from_rational(self, a: &Q) -> Option<u64> {
        let d = self.from_bigint(a.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(a.numer()), self.inv(d)))
    }

    /// Symmetric lift to (-p/2, p/2].
    pub fn lift(self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }
}

/// Row-major dense matrix over Z/pZ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

/// Result of Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    /// Original index of the row that supplied each pivot; these rows are
    /// linearly independent.
    pub pivot_rows: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize) -> Self {
        let mut m = DenseMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.data.split_at_mut(hi * c);
        x[lo * c..(lo + 1) * c].swap_with_slice(&mut y[..c]);
    }

    /// In-place elimination. With `reduced`, produces the reduced row
    /// echelon form with unit pivots; otherwise only clears below pivots.
    pub fn eliminate(&mut self, f: Zp, reduced: bool) -> Echelon {
        let (m, n) = (self.rows, self.cols);
        let mut perm: Vec<usize> = (0..m).collect();
        let mut pivot_cols = Vec::new();
        let mut pivot_rows = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, piv);
            perm.swap(r, piv);
            let inv = f.inv(self.get(r, c));
            {
                let row = self.row_mut(r);
                for x in row[c..].iter_mut() {
                    *x = f.mul(*x, inv);
                }
            }
            let start = if reduced { 0 } else { r + 1 };
            let (head, tail) = self.data.split_at_mut(r * n);
            let (prow, rest) = tail.split_at_mut(n);
            let clear = |other: &mut [u64]| {
                let factor = other[c];
                if factor != 0 {
                    for (x, &y) in other[c..].iter_mut().zip(&prow[c..]) {
                        if y != 0 {
                            *x = f.sub(*x, f.mul(factor, y));
                        }
                    }
                }
            };
            for i in start..r {
                clear(&mut head[i * n..(i + 1) * n]);
            }
            for chunk in rest.chunks_mut(n) {
                clear(chunk);
            }
            pivot_cols.push(c);
            pivot_rows.push(perm[r]);
            r += 1;
        }
        Echelon { rank: r, pivot_cols, pivot_rows }
    }

    pub fn rank(&self, f: Zp) -> usize {
        let mut m = self.clone();
        m.eliminate(f, false).rank
    }

    /// Basis of the right kernel, one vector per free column, normalized to
    /// 1 at its free column.
    pub fn kernel(&self, f: Zp) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let e = m.eliminate(f, true);
        let mut is_pivot = vec![false; self.cols];
        for &c in &e.pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![0; self.cols];
                v[j] = 1;
                for (i, &pc) in e.pivot_cols.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, j));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self, f: Zp) -> Option<DenseMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = DenseMatrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        let e = aug.eliminate(f, true);
        if e.rank < n || e.pivot_cols[n - 1] != n - 1 {
            return None;
        }
        let mut inv = DenseMatrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}
