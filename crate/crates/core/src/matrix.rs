//! Dense exact linear algebra: row reduction, kernels, linear systems.
//!
//! Elimination is plain Gauss-Jordan with the first nonzero entry of each
//! column as pivot. Nothing here is tuned beyond avoiding needless clones;
//! the matrices that occur are at most a few hundred rows wide.

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    pub reduced: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn from_columns(columns: Vec<Vec<E>>, rows: usize) -> Result<Self> {
        let cols = columns.len();
        Ok(Self::from_rows(columns, rows)?.transpose_with_shape(cols, rows))
    }

    fn transpose_with_shape(self, rows: usize, cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                entries.push(self.entries[i * cols + j].clone());
            }
        }
        Self { rows: cols, cols: rows, entries }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        self.clone().transpose_with_shape(self.rows, self.cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.entries.split_at_mut(hi * c);
        head[lo * c..(lo + 1) * c].swap_with_slice(&mut tail[..c]);
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.entries.iter().all(|e| field.is_zero(e))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, rhs: &Matrix<E>) -> Result<Matrix<E>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = field.add(&out.entries[idx], &field.mul(a, rhs.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, x: &[E]) -> Result<Vec<E>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect())
    }

    /// Gauss-Jordan elimination in place over the first `limit` columns,
    /// returning the pivot columns. Every row operation is applied to all
    /// columns, which is what lets augmented matrices carry transforms.
    fn eliminate<F: Field<Elem = E>>(&mut self, field: &F, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            let cols = self.cols;
            for j in c..cols {
                let idx = r * cols + j;
                self.entries[idx] = field.mul(&self.entries[idx], &inv);
            }
            let pivot_row: Vec<E> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if field.is_zero(&factor) {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    let idx = i * cols + c + off;
                    self.entries[idx] = field.sub(&self.entries[idx], &field.mul(&factor, pv));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> Rref<E> {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate(field, self.cols);
        Rref { reduced, pivots }
    }

    /// Returns the reduced form together with an invertible `T` such that
    /// `T * self = reduced`.
    pub fn rref_with_transform<F: Field<Elem = E>>(&self, field: &F) -> (Rref<E>, Matrix<E>) {
        let width = self.cols + self.rows;
        let mut aug = Matrix::zeros(field, self.rows, width);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols + i, field.one());
        }
        let pivots = aug.eliminate(field, self.cols);
        let mut reduced = Matrix::zeros(field, self.rows, self.cols);
        let mut transform = Matrix::zeros(field, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                reduced.set(i, j, aug.get(i, j).clone());
            }
            for j in 0..self.rows {
                transform.set(i, j, aug.get(i, self.cols + j).clone());
            }
        }
        (Rref { reduced, pivots }, transform)
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        self.rref(field).rank()
    }

    /// Basis of the right null space, one basis vector per column of the
    /// result (a `cols x (cols - rank)` matrix).
    pub fn kernel_basis<F: Field<Elem = E>>(&self, field: &F) -> Matrix<E> {
        let Rref { reduced, pivots } = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(field, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, field.one());
            for (r, &p) in pivots.iter().enumerate() {
                k.set(p, t, field.neg(reduced.get(r, f)));
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Result<Option<Vec<E>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.eliminate(field, self.cols);
        let rank = pivots.len();
        if (rank..self.rows).any(|i| !field.is_zero(aug.get(i, self.cols))) {
            return Ok(None);
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn determinant<F: Field<Elem = E>>(&self, field: &F) -> Result<E> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !field.is_zero(m.get(i, c))) else {
                return Ok(field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = field.neg(&det);
            }
            let pv = m.get(c, c).clone();
            det = field.mul(&det, &pv);
            let inv = field.inv(&pv).expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = field.mul(m.get(i, c), &inv);
                if field.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

/// Incrementally built row space kept in echelon form.
///
/// Each stored row is normalized so its leading (lowest-index) nonzero entry
/// is one, and no two rows share a leading index. Rows are not
/// back-substituted, so inserting is a single forward sweep.
#[derive(Clone, Debug)]
pub struct EchelonSpace<E> {
    width: usize,
    by_pivot: Vec<Option<Vec<E>>>,
    dim: usize,
}

impl<E: Clone + PartialEq> EchelonSpace<E> {
    pub fn new(width: usize) -> Self {
        Self { width, by_pivot: vec![None; width], dim: 0 }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full(&self) -> bool {
        self.dim == self.width
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, mut v: Vec<E>) -> Vec<E> {
        assert_eq!(v.len(), self.width, "vector width");
        for i in 0..self.width {
            if field.is_zero(&v[i]) {
                continue;
            }
            if let Some(row) = &self.by_pivot[i] {
                let factor = v[i].clone();
                for j in i..self.width {
                    if !field.is_zero(&row[j]) {
                        v[j] = field.sub(&v[j], &field.mul(&factor, &row[j]));
                    }
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: Vec<E>) -> bool {
        self.reduce(field, v).iter().all(|e| field.is_zero(e))
    }

    /// Inserts `v`; returns the normalized new row when it enlarged the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: Vec<E>) -> Option<&[E]> {
        if self.is_full() {
            return None;
        }
        let mut v = self.reduce(field, v);
        let lead = v.iter().position(|e| !field.is_zero(e))?;
        let inv = field.inv(&v[lead]).expect("lead is nonzero");
        for e in v[lead..].iter_mut() {
            *e = field.mul(e, &inv);
        }
        self.by_pivot[lead] = Some(v);
        self.dim += 1;
        self.by_pivot[lead].as_deref()
    }

    /// Inserts a row whose leading index is known to be unoccupied, without
    /// reducing it. Returns false (and stores nothing) if that index is taken
    /// or the row is zero.
    pub fn insert_echelon_row<F: Field<Elem = E>>(&mut self, field: &F, mut v: Vec<E>) -> bool {
        let Some(lead) = v.iter().position(|e| !field.is_zero(e)) else {
            return false;
        };
        if self.by_pivot[lead].is_some() {
            return false;
        }
        let inv = field.inv(&v[lead]).expect("lead is nonzero");
        for e in v[lead..].iter_mut() {
            *e = field.mul(e, &inv);
        }
        self.by_pivot[lead] = Some(v);
        self.dim += 1;
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.by_pivot.iter().filter_map(|r| r.as_deref())
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.by_pivot.into_iter().flatten().collect()
    }
}
