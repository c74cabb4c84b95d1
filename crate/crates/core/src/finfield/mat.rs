//! Square matrices over a prime field, stored row-major with reduced entries.

use std::fmt;

use super::FinFieldError;

/// Modular inverse for prime modulus, by Fermat.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Additive negation mod `p`.
pub fn neg_mod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

/// An `n x n` matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    p: u64,
    a: Vec<u64>,
}

impl Mat {
    pub fn zero(n: usize, p: u64) -> Self {
        assert!(p >= 2);
        Mat {
            n,
            p,
            a: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zero(n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from rows of possibly-unreduced (signed) integers.
    pub fn from_rows(p: u64, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "square matrix expected");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u64);
            }
        }
        m
    }

    pub fn diagonal(p: u64, entries: &[u64]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, p);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v % p);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.n + j] = v % self.p;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        assert_eq!(self.p, other.p);
        let n = self.n;
        let p = self.p;
        let mut out = Mat::zero(n, p);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (out.get(i, j) + aik * other.get(k, j)) % p;
                    out.a[i * n + j] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        assert_eq!(self.p, other.p);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = (*x + *y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        assert_eq!(self.p, other.p);
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = (*x + self.p - *y) % self.p;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.n, self.p);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.n, self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn det(&self) -> u64 {
        let mut m = self.clone();
        let n = self.n;
        let p = self.p;
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0);
            let Some(pivot) = pivot else { return 0 };
            if pivot != col {
                for j in 0..n {
                    let tmp = m.get(col, j);
                    m.set(col, j, m.get(pivot, j));
                    m.set(pivot, j, tmp);
                }
                det = neg_mod(det, p);
            }
            let pv = m.get(col, col);
            det = det * pv % p;
            let pv_inv = inv_mod(pv, p).unwrap();
            for r in col + 1..n {
                let factor = m.get(r, col) * pv_inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = (m.get(r, j) + neg_mod(factor * m.get(col, j) % p, p)) % p;
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn inv(&self) -> Result<Mat, FinFieldError> {
        let n = self.n;
        let p = self.p;
        let mut m = self.clone();
        let mut out = Mat::identity(n, p);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m.get(r, col) != 0)
                .ok_or(FinFieldError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = m.get(col, j);
                    m.set(col, j, m.get(pivot, j));
                    m.set(pivot, j, tmp);
                    let tmp = out.get(col, j);
                    out.set(col, j, out.get(pivot, j));
                    out.set(pivot, j, tmp);
                }
            }
            let pv_inv = inv_mod(m.get(col, col), p).unwrap();
            for j in 0..n {
                m.set(col, j, m.get(col, j) * pv_inv % p);
                out.set(col, j, out.get(col, j) * pv_inv % p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (m.get(r, j) + neg_mod(factor * m.get(col, j) % p, p)) % p;
                    m.set(r, j, v);
                    let v = (out.get(r, j) + neg_mod(factor * out.get(col, j) % p, p)) % p;
                    out.set(r, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.is_upper_triangular() && (0..self.n).all(|i| self.get(i, i) == 1)
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        self.transpose().is_unit_upper_triangular()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Scales column `j` by `c`.
    pub fn scale_col(&mut self, j: usize, c: u64) {
        for i in 0..self.n {
            let v = self.get(i, j) * (c % self.p) % self.p;
            self.set(i, j, v);
        }
    }

    /// Adds `c` times column `src` to column `dst`.
    pub fn add_col(&mut self, dst: usize, src: usize, c: u64) {
        for i in 0..self.n {
            let v = (self.get(i, dst) + c % self.p * self.get(i, src)) % self.p;
            self.set(i, dst, v);
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank of a rectangular row-major array over `F_p`.
pub fn rank_rect(rows: usize, cols: usize, data: &mut [u64], p: u64) -> usize {
    debug_assert_eq!(data.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !data[r * cols + col].is_multiple_of(p));
        let Some(pivot) = pivot else { continue };
        if pivot != rank {
            for j in 0..cols {
                data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let pv_inv = inv_mod(data[rank * cols + col] % p, p).unwrap();
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = data[r * cols + col] % p * pv_inv % p;
            if factor == 0 {
                continue;
            }
            for j in col..cols {
                let v =
                    (data[r * cols + j] + neg_mod(factor * (data[rank * cols + j] % p) % p, p)) % p;
                data[r * cols + j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
