use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over an exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// A subspace of `K^n` given by basis columns, plus rows on which the basis is the
/// identity. Reading those rows off a vector of the subspace yields its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub basis: Matrix,
    pub coordinate_rows: Vec<usize>,
}

/// A surjection `K^n -> K^k` whose kernel is a prescribed subspace, plus columns
/// on which it is the identity (a canonical section).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub projection: Matrix,
    pub section_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, field, entries }
    }

    /// Builds a matrix from rows, checking that the rows are rectangular and that
    /// every entry lives in `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    context: "ragged matrix rows".into(),
                    expected: (n_rows, cols),
                    found: (n_rows, row.len()),
                });
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch { expected: field, found: x.field() });
                }
                entries.push(x);
            }
        }
        Ok(Matrix { rows: n_rows, cols, field, entries })
    }

    /// Integer matrix; the column count is taken from the first row (zero if empty).
    pub fn from_i64<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), cols, "ragged integer rows");
            for (c, &x) in row.as_ref().iter().enumerate() {
                m.entries[r * cols + c] = field.from_i64(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert_eq!(value.field(), self.field);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { entries: self.entries.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch { expected: self.field, found: rhs.field });
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                context: "matrix product".into(),
                expected: (self.cols, rhs.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix shape mismatch");
        assert_eq!(self.field, rhs.field, "matrix field mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| op(a, b)).collect(),
        }
    }

    /// Horizontal concatenation `[A | B | ...]`; all blocks share the row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks share the column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "paste out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.entries[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows.start + r, cols.start + c).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting, scanning columns left to
    /// right. The pivot choice is deterministic, so bases derived from it are too.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m.get(pivot_row, col).inverse().expect("nonzero pivot");
            for c in col..m.cols {
                let idx = pivot_row * m.cols + c;
                m.entries[idx] = &m.entries[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m.entries[pivot_row * m.cols + c].clone();
                    if p.is_zero() {
                        continue;
                    }
                    let idx = r * m.cols + c;
                    m.entries[idx] = &m.entries[idx] - &(&factor * &p);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            self.transpose().rref().pivots.len()
        } else {
            self.rref().pivots.len()
        }
    }

    /// Kernel with the canonical RREF basis: one column per free variable, equal to
    /// 1 at that variable and 0 at every other free variable.
    pub fn kernel(&self) -> SubspaceBasis {
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                let x = reduced.get(i, f);
                if !x.is_zero() {
                    basis.set(p, k, -x);
                }
            }
        }
        SubspaceBasis { basis, coordinate_rows: free }
    }

    /// Columns form a basis of the kernel; count is `cols - rank`.
    pub fn kernel_basis(&self) -> Matrix {
        self.kernel().basis
    }

    /// Quotient of the codomain by the column space.
    pub fn cokernel(&self) -> QuotientMap {
        let left = self.transpose().kernel();
        QuotientMap { projection: left.basis.transpose(), section_cols: left.coordinate_rows }
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn image_basis(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_cols(&pivots)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return self.field.zero();
            };
            if found != col {
                m.swap_rows(found, col);
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = m.get(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let idx = r * n + c;
                    let v = &factor * m.get(col, c);
                    m.entries[idx] = &m.entries[idx] - &v;
                }
            }
        }
        det
    }

    /// `ker(self) ⊆ ker(other)` for matrices with the same domain, i.e. the row space
    /// of `other` lies in the row space of `self`.
    pub fn kernel_contained_in(&self, other: &Matrix) -> bool {
        assert_eq!(self.cols, other.cols, "kernel comparison needs a common domain");
        let stacked = Matrix::vstack(self.field, self.cols, &[self, other]);
        stacked.rank() == self.rank()
    }

    /// Solves `self * X = rhs` when a solution exists.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve needs matching row counts");
        let aug = Matrix::hstack(self.field, self.rows, &[self, rhs]);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, reduced.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of vectors (columns of `v`) that lie in the subspace.
    pub fn coordinates(&self, v: &Matrix) -> Matrix {
        v.select_rows(&self.coordinate_rows)
    }
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// The section `K^k -> K^n` picking the identity columns.
    pub fn section(&self) -> Matrix {
        let field = self.projection.field();
        let mut s = Matrix::zeros(field, self.projection.cols(), self.dim());
        for (k, &c) in self.section_cols.iter().enumerate() {
            s.set(c, k, field.one());
        }
        s
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { entries: self.entries.iter().map(|x| -x).collect(), ..self.clone() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
