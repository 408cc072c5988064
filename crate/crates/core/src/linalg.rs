//! Dense exact linear algebra.
//!
//! Row-vector convention throughout: a matrix acts on the right of row
//! vectors, so the composite "first `a`, then `b`" is the product `a * b`.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("no solution: right-hand side is outside the row space")]
    NoSolution,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Mat { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Mat { rows: n, cols, data }
    }

    /// Small-integer convenience constructor, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let src = rhs.row(k);
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(src) {
                    if !b.is_zero() {
                        *d = d.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (d, b) in out.iter_mut().zip(self.row(k)) {
                if !b.is_zero() {
                    *d = d.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// `self += c * rhs`
    pub fn add_scaled(&mut self, c: &T, rhs: &Mat<T>) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a = a.clone() + c.clone() * b.clone();
            }
        }
    }

    pub fn vstack(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Mat { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(rhs.row(i).iter().cloned());
        }
        Mat { rows: self.rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&Mat<T>]) -> Mat<T> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat<T>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat<T> {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Mat { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat<T> {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(idx.iter().map(|&j| r[j].clone()));
        }
        Mat { rows: self.rows, cols: idx.len(), data }
    }

    pub fn rref(&self) -> Rref<T> {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place(self.cols);
        let rank = pivots.len();
        Rref { reduced, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place(self.cols).len()
    }

    /// Reduces in place, searching for pivots only among the first
    /// `pivot_limit` columns. Returns the pivot columns.
    fn rref_in_place(&mut self, pivot_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = T::one() / self[(r, c)].clone();
            for x in self.row_mut(r)[c..].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let cols = self.cols;
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..cols {
                    let pv = self.data[r * cols + j].clone();
                    if !pv.is_zero() {
                        let x = &mut self.data[i * cols + j];
                        *x = x.clone() - f.clone() * pv;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Canonical basis of the left kernel `{x : x * self = 0}`, one basis
    /// vector per row, itself in reduced row echelon form.
    pub fn kernel_basis(&self) -> Mat<T> {
        let t = self.transpose().rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut s = vec![None; self.rows];
            for (i, &p) in t.pivots.iter().enumerate() {
                s[p] = Some(i);
            }
            s
        };
        let mut basis = Vec::new();
        for f in 0..self.rows {
            if pivot_set[f].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.rows];
            v[f] = T::one();
            for (i, &p) in t.pivots.iter().enumerate() {
                v[p] = -t.reduced[(i, f)].clone();
            }
            basis.push(v);
        }
        let k = Mat::from_rows(self.rows, basis);
        k.rref().nonzero_rows()
    }

    /// Solves `X * self = b`. Free parameters of the reduced-echelon
    /// parameterisation are set to zero.
    pub fn solve(&self, b: &Mat<T>) -> Result<Mat<T>, LinalgError> {
        assert_eq!(self.cols, b.cols, "X * A = B needs cols(A) = cols(B)");
        let n = self.rows;
        let mut aug = self.transpose().hstack(&b.transpose());
        let pivots = aug.rref_in_place(n);
        for i in pivots.len()..aug.rows {
            if aug.row(i)[n..].iter().any(|x| !x.is_zero()) {
                return Err(LinalgError::NoSolution);
            }
        }
        let mut x = Mat::zeros(b.rows, n);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.rows {
                x[(j, p)] = aug[(i, n + j)].clone();
            }
        }
        Ok(x)
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<T> {
    pub reduced: Mat<T>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<T: Scalar> Rref<T> {
    pub fn nonzero_rows(&self) -> Mat<T> {
        self.reduced.select_rows(&(0..self.rank).collect::<Vec<_>>())
    }
}

/// A subspace of `T^n` held by its reduced row echelon basis.
///
/// Coordinates of a member vector are read off at the pivot columns, and
/// the non-pivot unit vectors span a canonical complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<T> {
    basis: Mat<T>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: Mat::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { basis: Mat::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(rows: &Mat<T>) -> Self {
        let r = rows.rref();
        Subspace { basis: r.nonzero_rows(), pivots: r.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Mat<T> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns, in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&j| !is_pivot[j]).collect()
    }

    /// Subtracts the subspace component so that `v` vanishes at every pivot.
    pub fn reduce(&self, v: &mut [T]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x = x.clone() - c.clone() * b.clone();
                }
            }
        }
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_all(&self, rows: &Mat<T>) -> bool {
        rows.row_vectors().all(|r| self.contains(r))
    }

    pub fn is_subspace_of(&self, other: &Subspace<T>) -> bool {
        other.contains_all(&self.basis)
    }

    /// Coordinates with respect to the echelon basis; `v` must lie in the span.
    pub fn coords(&self, v: &[T]) -> Vec<T> {
        debug_assert!(self.contains(v));
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of every row of `rows` (all members of the span).
    pub fn coords_matrix(&self, rows: &Mat<T>) -> Mat<T> {
        rows.select_cols(&self.pivots)
    }

    pub fn sum(&self, other: &Subspace<T>) -> Subspace<T> {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace<T>) -> Subspace<T> {
        let stacked = self.basis.vstack(&other.basis.scale(&-T::one()));
        let k = stacked.kernel_basis();
        let left = k.select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::span(&left.mul(&self.basis))
    }
}
