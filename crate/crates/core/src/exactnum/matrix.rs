use std::fmt;

use serde::{Deserialize, Serialize};

use super::echelon::{axpy, scale_vec, EchelonBasis, SparseVec};
use super::Scalar;
use crate::error::{Error, Result};

/// A sparse matrix stored as one ordered map per row.
///
/// Zeros are never stored, so structural equality is numerical equality.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<SparseVec<T>>,
}

impl<T: Scalar> fmt::Debug for SparseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for (i, j, x) in self.triplets() {
            write!(f, " ({i},{j})={x}")?;
        }
        write!(f, " ]")
    }
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { n_rows, n_cols, rows: vec![SparseVec::new(); n_rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for i in 0..n {
                m.rows[i].insert(i, c.clone());
            }
        }
        m
    }

    /// Builds a diagonal matrix from its diagonal entries.
    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets<I>(n_rows: usize, n_cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = Self::zeros(n_rows, n_cols);
        for (i, j, x) in triplets {
            if i >= n_rows || j >= n_cols {
                return Err(Error::DimensionMismatch(format!("entry ({i},{j}) outside {n_rows}x{n_cols}")));
            }
            m.add_at(i, j, x);
        }
        Ok(m)
    }

    /// Builds a matrix from dense rows, which must all have the same length.
    pub fn from_dense(rows: &[Vec<T>]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), n_cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch("ragged dense rows".into()));
            }
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Same as [`from_dense`](Self::from_dense) from small integers.
    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&x| T::int(x)).collect()).collect();
        Self::from_dense(&rows)
    }

    /// The `n x n` matrix unit with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, T::one());
        m
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(n_rows: usize, cols: &[SparseVec<T>]) -> Result<Self> {
        let trip = cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(&i, x)| (i, j, x.clone())));
        Self::from_triplets(n_rows, cols.len(), trip)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn row(&self, i: usize) -> &SparseVec<T> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        assert!(i < self.n_rows && j < self.n_cols, "index ({i},{j}) out of range");
        if x.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, x);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: T) {
        let cur = self.get(i, j);
        self.set(i, j, cur + x);
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, x)| (i, j, x)))
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n_rows).map(|i| (0..self.n_cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for (i, j, x) in self.triplets() {
            t.rows[j].insert(i, x.clone());
        }
        t
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.n_rows.min(self.n_cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(i, j, _)| i == j)
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &T, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let mut out = self.clone();
        for (r, o) in out.rows.iter_mut().zip(&other.rows) {
            axpy(r, c, o);
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&T::one(), other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&-T::one(), other)
    }

    pub fn scale(&self, c: &T) -> Self {
        SparseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            rows: self.rows.iter().map(|r| scale_vec(r, c)).collect(),
        }
    }

    /// Exact product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n_cols != other.n_rows {
            return Err(Error::DimensionMismatch(format!(
                "matmul: {}x{} times {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = SparseVec::new();
                for (&k, x) in r {
                    axpy(&mut acc, x, &other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix { n_rows: self.n_rows, n_cols: other.n_cols, rows })
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.checked_sub(&other.matmul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut out = Self::identity(self.n_rows);
        for _ in 0..k {
            out = self.matmul(&out)?;
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &SparseVec<T>) -> SparseVec<T> {
        let mut y = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut s = T::zero();
            if r.len() <= x.len() {
                for (j, a) in r {
                    if let Some(b) = x.get(j) {
                        s = s + a.clone() * b.clone();
                    }
                }
            } else {
                for (j, b) in x {
                    if let Some(a) = r.get(j) {
                        s = s + a.clone() * b.clone();
                    }
                }
            }
            if !s.is_zero() {
                y.insert(i, s);
            }
        }
        y
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.n_rows * other.n_rows, self.n_cols * other.n_cols);
        for (i, j, a) in self.triplets() {
            for (k, l, b) in other.triplets() {
                out.rows[i * other.n_rows + k].insert(j * other.n_cols + l, a.clone() * b.clone());
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Self]) -> Result<Self> {
        let n_cols = blocks.first().map_or(0, |b| b.n_cols);
        let mut rows = Vec::new();
        for b in blocks {
            if b.n_cols != n_cols {
                return Err(Error::DimensionMismatch("vstack column counts differ".into()));
            }
            rows.extend(b.rows.iter().cloned());
        }
        Ok(SparseMatrix { n_rows: rows.len(), n_cols, rows })
    }

    /// Block diagonal sum.
    pub fn direct_sum(blocks: &[Self]) -> Self {
        let nr = blocks.iter().map(|b| b.n_rows).sum();
        let nc = blocks.iter().map(|b| b.n_cols).sum();
        let mut out = Self::zeros(nr, nc);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, j, x) in b.triplets() {
                out.rows[r0 + i].insert(c0 + j, x.clone());
            }
            r0 += b.n_rows;
            c0 += b.n_cols;
        }
        out
    }

    /// Restriction to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let pos: std::collections::HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (j, x) in &self.rows[i] {
                if let Some(&b) = pos.get(j) {
                    out.rows[a].insert(b, x.clone());
                }
            }
        }
        out
    }

    /// Row-major flattening into a vector of length `n_rows * n_cols`.
    pub fn flatten(&self) -> SparseVec<T> {
        self.triplets().map(|(i, j, x)| (i * self.n_cols + j, x.clone())).collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = EchelonBasis::new();
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.rank()
    }
}
