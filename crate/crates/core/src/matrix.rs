//! Sparse integer matrices, stored column by column.
//!
//! Columns are the images of source generators, so a homomorphism is just a
//! list of sparse image vectors. Entries within a column are sorted by row and
//! never zero.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::int::Int;

/// A sparse vector: `(index, nonzero value)` pairs sorted by index.
pub type SparseVec = Vec<(usize, Int)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix { rows: n, cols: (0..n).map(|i| vec![(i, Int::ONE)]).collect() }
    }

    pub fn diagonal(entries: &[Int]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            if !e.is_zero() {
                m.cols[i].push((i, e.clone()));
            }
        }
        m
    }

    /// Builds from row-major dense data.
    pub fn from_rows(rows: &[Vec<Int>]) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.cols[j].push((i, v.clone()));
                }
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Matrix {
        let dense: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect();
        Matrix::from_rows(&dense)
    }

    /// Builds from sparse columns; entries are sorted and zeros dropped.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Matrix {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: SparseVec = Vec::with_capacity(c.len());
                for (i, v) in c {
                    assert!(i < rows, "row index {} out of range {}", i, rows);
                    match out.last_mut() {
                        Some(last) if last.0 == i => last.1 = &last.1 + &v,
                        _ => out.push((i, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        Matrix { rows, cols }
    }

    /// Builds from dense columns.
    pub fn from_dense_columns(rows: usize, cols: &[Vec<Int>]) -> Matrix {
        let cols = cols
            .iter()
            .map(|c| {
                debug_assert_eq!(c.len(), rows);
                c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
            })
            .collect();
        Matrix { rows, cols }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.cols[j][k].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        Matrix { rows: self.ncols(), cols }
    }

    /// Row-major sparse view.
    pub fn rows_sparse(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    pub fn mul_sparse_vec(&self, x: &SparseVec) -> SparseVec {
        let mut acc = vec![Int::ZERO; self.rows];
        let mut touched = Vec::new();
        for (j, xj) in x {
            for (i, v) in &self.cols[*j] {
                if acc[*i].is_zero() {
                    touched.push(*i);
                }
                acc[*i] = acc[*i].add_mul(v, xj);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::with_capacity(touched.len());
        for i in touched {
            if !acc[i].is_zero() {
                out.push((i, core::mem::take(&mut acc[i])));
            }
        }
        out
    }

    pub fn mul_dense_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ncols());
        let mut acc = vec![Int::ZERO; self.rows];
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, v) in &self.cols[j] {
                acc[*i] = acc[*i].add_mul(v, xj);
            }
        }
        acc
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), rhs.nrows(), "dimension mismatch in product");
        let cols = rhs.cols.iter().map(|c| self.mul_sparse_vec(c)).collect();
        Matrix { rows: self.rows, cols }
    }

    /// Reduces row `i` modulo `moduli[i]` (0 = no reduction) into `[0, m)`.
    pub fn reduce_rows(&self, moduli: &[Int]) -> Matrix {
        assert_eq!(moduli.len(), self.rows);
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(i, v)| {
                        let m = &moduli[*i];
                        let r = if m.is_zero() { v.clone() } else { v.rem_euclid(m) };
                        (!r.is_zero()).then_some((*i, r))
                    })
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, cols }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        Matrix { rows: self.rows, cols }
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut cols = self.cols.clone();
        for c in &rhs.cols {
            cols.push(c.iter().map(|(i, v)| (i + self.rows, v.clone())).collect());
        }
        Matrix { rows: self.rows + rhs.rows, cols }
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix { rows: self.rows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let cols = self
            .cols
            .iter()
            .map(|c| {
                let mut v: SparseVec =
                    c.iter().filter(|(i, _)| pos[*i] != usize::MAX).map(|(i, v)| (pos[*i], v.clone())).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        Matrix { rows: idx.len(), cols }
    }

    pub fn scale(&self, k: &Int) -> Matrix {
        if k.is_zero() {
            return Matrix::zeros(self.rows, self.ncols());
        }
        let cols = self.cols.iter().map(|c| c.iter().map(|(i, v)| (*i, v * k)).collect()).collect();
        Matrix { rows: self.rows, cols }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.ncols()), (rhs.rows, rhs.ncols()));
        let cols = self.cols.iter().zip(&rhs.cols).map(|(a, b)| sparse_axpy(a, &Int::from(-1), b)).collect();
        Matrix { rows: self.rows, cols }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.ncols()), (rhs.rows, rhs.ncols()));
        let cols = self.cols.iter().zip(&rhs.cols).map(|(a, b)| sparse_axpy(a, &Int::ONE, b)).collect();
        Matrix { rows: self.rows, cols }
    }
}

/// `a + k·b` for sparse vectors.
pub fn sparse_axpy(a: &SparseVec, k: &Int, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map_or(usize::MAX, |e| e.0);
        let ib = b.get(j).map_or(usize::MAX, |e| e.0);
        if ia < ib {
            out.push(a[i].clone());
            i += 1;
        } else if ib < ia {
            let v = &b[j].1 * k;
            if !v.is_zero() {
                out.push((ib, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add_mul(&b[j].1, k);
            if !v.is_zero() {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.ncols())?;
        if self.rows * self.ncols() <= 400 {
            for row in self.to_dense_rows() {
                writeln!(f, "  {:?}", row)?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_i64_rows(&[&[1, 2], &[0, 3]]);
        let b = Matrix::from_i64_rows(&[&[4, 0], &[1, -1]]);
        assert_eq!(a.mul(&b), Matrix::from_i64_rows(&[&[6, -2], &[3, -3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.get(1, 1), Int::from(3));
    }

    #[test]
    fn from_columns_merges_duplicates() {
        let m = Matrix::from_columns(3, vec![vec![(2, Int::from(1)), (0, Int::from(2)), (2, Int::from(-1))]]);
        assert_eq!(m.column(0), &vec![(0, Int::from(2))]);
    }
}
