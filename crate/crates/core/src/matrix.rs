//! Dense matrices over a prime field and exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::subspace::Subspace;

/// Row-major dense matrix over GF(p). Entries are stored as canonical
/// representatives; the field is shared by every entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(field, cols, rows)
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// an empty row list still has a well-defined width.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(
        field: PrimeField,
        cols: usize,
        rows: &[R],
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&v| field.reduce(v)));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Wraps already-reduced row-major data.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= field.modulus()) {
            return Err(Error::Shape(format!(
                "entry {bad} is not reduced mod {}",
                field.modulus()
            )));
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                debug_assert!(v < field.modulus());
                data.push(v);
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.entry(r, c) as i64)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        debug_assert!(value < self.field.modulus());
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.entry(c, r))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.modulus() as u64;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.entry(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.entry(k, c) as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.field.modulus() as u64;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p)
                    as u32
            })
            .collect())
    }

    /// Rows stacked on top of each other.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns over {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Columns `coords` of `self`, in the given order.
    pub fn select_cols(&self, coords: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.cols,
            });
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            coords.len(),
            |r, c| self.entry(r, coords[c]),
        ))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self.entry(rows.start + r, cols.start + c)
        })
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    ///
    /// Columns are scanned left to right; within a column the first row at
    /// or below the current one holding a nonzero entry becomes the pivot.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let cols = self.cols;
        let mut data = self.data.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..cols {
            if top == self.rows {
                break;
            }
            let Some(src) = (top..self.rows).find(|&r| data[r * cols + c] != 0) else {
                continue;
            };
            if src != top {
                for k in 0..cols {
                    data.swap(src * cols + k, top * cols + k);
                }
            }
            let inv = f.inv(data[top * cols + c]).expect("pivot is nonzero");
            if inv != 1 {
                for k in c..cols {
                    data[top * cols + k] = f.mul(data[top * cols + k], inv);
                }
            }
            for r in 0..self.rows {
                if r == top {
                    continue;
                }
                let factor = data[r * cols + c];
                if factor == 0 {
                    continue;
                }
                for k in c..cols {
                    let sub = f.mul(factor, data[top * cols + k]);
                    data[r * cols + k] = f.sub(data[r * cols + k], sub);
                }
            }
            pivots.push(c);
            top += 1;
        }
        data.truncate(top * cols);
        (
            Matrix {
                field: f,
                rows: top,
                cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan elimination on `[self | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Matrix::from_fn(self.field, n, 2 * n, |r, c| {
            if c < n {
                self.entry(r, c)
            } else {
                u32::from(c - n == r)
            }
        });
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(reduced.submatrix(0..n, n..2 * n))
    }

    /// Null space `{x : self · x = 0}` as a canonical subspace of GF(p)^cols.
    pub fn kernel(&self) -> Subspace {
        let (reduced, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut gens = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            gens.set(k, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                gens.set(k, pc, f.neg(reduced.entry(r, fc)));
            }
        }
        Subspace::from_generators(self.cols, &gens).expect("kernel generators have matching width")
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(field: PrimeField, blocks: &[Matrix]) -> Result<Matrix> {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, n, n);
        let mut offset = 0;
        for b in blocks {
            if !b.is_square() {
                return Err(Error::Shape("block-diagonal blocks must be square".into()));
            }
            if b.field != field {
                return Err(Error::FieldMismatch(field.modulus(), b.field.modulus()));
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(offset + r, offset + c, b.entry(r, c));
                }
            }
            offset += b.rows;
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(gf(p), rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let (r, piv) = m(2, &[&[1, 1], &[1, 0]]).rref();
        assert_eq!(r, Matrix::identity(gf(2), 2));
        assert_eq!(piv, vec![0, 1]);

        let (r, piv) = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r, m(2, &[&[1, 1]]));
        assert_eq!(piv, vec![0]);

        let (r, piv) = m(3, &[&[0, 2]]).rref();
        assert_eq!(r, m(3, &[&[0, 1]]));
        assert_eq!(piv, vec![1]);
    }

    #[test]
    fn rank_inverse_mul_examples() {
        assert_eq!(m(2, &[&[0, 1], &[1, 0]]).rank(), 2);
        let u = m(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.inverse().unwrap(), u);
        assert_eq!(m(3, &[&[2]]).mul(&m(3, &[&[2]])).unwrap(), m(3, &[&[1]]));
    }

    #[test]
    fn inverse_errors() {
        assert_eq!(m(2, &[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular));
        assert!(matches!(m(2, &[&[1, 1]]).inverse(), Err(Error::Shape(_))));
        assert!(matches!(
            m(2, &[&[1, 1]]).mul(&m(2, &[&[1, 1]])),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            m(2, &[&[1]]).mul(&m(3, &[&[1]])),
            Err(Error::FieldMismatch(2, 3))
        ));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = m(5, &[&[1, 2, 3], &[0, 4, 1], &[2, 2, 0]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(gf(5), 3));
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(gf(5), 3));
    }

    #[test]
    fn kernel_examples() {
        let k = m(2, &[&[1, 1]]).kernel();
        assert_eq!(k.basis(), &m(2, &[&[1, 1]]));
        assert_eq!(Matrix::identity(gf(2), 2).kernel().dim(), 0);
        let k = m(3, &[&[1, 2]]).kernel();
        assert_eq!(k.basis(), &m(3, &[&[1, 1]]));
    }

    #[test]
    fn empty_shapes_are_legal() {
        let z = Matrix::zeros(gf(3), 0, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().dim(), 4);
        let e = Matrix::identity(gf(3), 0);
        assert_eq!(e.inverse().unwrap(), e);
    }

    #[test]
    fn from_rows_reduces_entries() {
        assert_eq!(m(3, &[&[-1, 7]]), m(3, &[&[2, 1]]));
        assert!(Matrix::from_rows(gf(3), &[vec![1, 2], vec![1]]).is_err());
    }
}
