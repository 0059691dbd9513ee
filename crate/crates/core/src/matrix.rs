//! Dense exact matrices over a coefficient ring, row-major.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use crate::ring::{Elem, Ring};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring.name())?;
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| self.ring.fmt_elem(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn scalar(ring: &Ring, n: usize, s: &Elem) -> Matrix {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elem) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Test/fixture helper: rows of small integers.
    pub fn from_int_rows(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        Self::from_rows(ring, data)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn col(&self, c: usize) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, 1, |r, _| self.get(r, c).clone())
    }

    pub fn take_cols(&self, idx: impl Iterator<Item = usize> + Clone) -> Matrix {
        let cols: Vec<usize> = idx.collect();
        Matrix::from_fn(&self.ring, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn take_rows(&self, idx: impl Iterator<Item = usize> + Clone) -> Matrix {
        let rows: Vec<usize> = idx.collect();
        Matrix::from_fn(&self.ring, rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        let ring = self.ring.clone();
        self.map(|e| ring.neg(e))
    }

    pub fn scale(&self, s: &Elem) -> Matrix {
        let ring = self.ring.clone();
        self.map(|e| ring.mul(s, e))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        assert_eq!(self.ring, other.ring);
        Matrix::from_fn(&self.ring, self.rows, self.cols, |r, c| {
            self.ring.add(self.get(r, c), other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        assert_eq!(self.ring, other.ring);
        let ring = &self.ring;
        Matrix::from_fn(ring, self.rows, other.cols, |r, c| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                let e = self.get(r, k);
                if ring.is_zero(e) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(e, other.get(k, c)));
            }
            acc
        })
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack rows");
        Matrix::from_fn(&self.ring, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack cols");
        Matrix::from_fn(&self.ring, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        })
    }

    pub fn hstack_all(ring: &Ring, rows: usize, mats: &[&Matrix]) -> Matrix {
        let mut acc = Matrix::zeros(ring, rows, 0);
        for m in mats {
            acc = acc.hstack(m);
        }
        acc
    }

    pub fn block_diag(ring: &Ring, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product; index (i,j) of the product maps to i*b.rows + j etc.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let ring = &self.ring;
        Matrix::from_fn(ring, self.rows * b.rows, self.cols * b.cols, |r, c| {
            let (ra, rb) = (r / b.rows, r % b.rows);
            let (ca, cb) = (c / b.cols, c % b.cols);
            ring.mul(self.get(ra, ca), b.get(rb, cb))
        })
    }

    /// Paste `other` into self at (r0, c0) (overwrites).
    pub fn paste(&mut self, r0: usize, c0: usize, other: &Matrix) {
        for r in 0..other.rows {
            for c in 0..other.cols {
                self.set(r0 + r, c0 + c, other.get(r, c).clone());
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Elem) {
        for c in 0..self.cols {
            let v = self.ring.add(self.get(dst, c), &self.ring.mul(q, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    /// col[dst] += q * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Elem) {
        for r in 0..self.rows {
            let v = self.ring.add(self.get(r, dst), &self.ring.mul(q, self.get(r, src)));
            self.set(r, dst, v);
        }
    }

    pub fn scale_row(&mut self, r: usize, s: &Elem) {
        for c in 0..self.cols {
            let v = self.ring.mul(s, self.get(r, c));
            self.set(r, c, v);
        }
    }

    /// Flatten column-major: vec(M) stacks the columns.
    pub fn vec_cols(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows * self.cols, 1, |r, _| {
            let (c, i) = (r / self.rows, r % self.rows);
            self.get(i, c).clone()
        })
    }

    /// Inverse of vec_cols for a rows x cols target shape.
    pub fn unvec_cols(v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        Matrix::from_fn(&v.ring, rows, cols, |r, c| v.get(c * rows + r, 0).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_vec() {
        let z = Ring::integers();
        let a = Matrix::from_int_rows(&z, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_int_rows(&z, &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(*k.get(0, 1), z.from_i64(1));
        assert_eq!(*k.get(2, 3), z.from_i64(4) /* a[1][1]*b[0][1] */);

        // vec(A X B) = (B^T kron A) vec(X)
        let x = Matrix::from_int_rows(&z, &[&[2, -1], &[0, 3]]);
        let lhs = a.mul(&x).mul(&b).vec_cols();
        let rhs = b.transpose().kron(&a).mul(&x.vec_cols());
        assert_eq!(lhs, rhs);
    }
}
