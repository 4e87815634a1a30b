//! Exponent matrices: row `i` lists the exponents of monomial `i`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("exponent matrix must have at least one monomial and one variable")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("monomial {row} is constant (all exponents zero)")]
    ZeroRow { row: usize },
    #[error("variable x{} does not appear in any monomial", .col + 1)]
    ZeroColumn { col: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
}

/// The `k x n` matrix of non-negative exponents of a polynomial with `k`
/// monomials in `n` variables.
///
/// Every monomial is nonconstant and every variable occurs somewhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl ExponentMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, MatrixError> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if k == 0 || n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(k * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::Ragged { row: i, len: row.len(), expected: n });
            }
            entries.extend_from_slice(row);
        }
        Self::from_flat(k, n, entries)
    }

    pub fn from_flat(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        assert_eq!(entries.len(), rows * cols, "flat buffer does not match shape");
        let m = Self { rows, cols, entries };
        if let Some(row) = (0..rows).find(|&i| m.row(i).iter().all(|&e| e == 0)) {
            return Err(MatrixError::ZeroRow { row });
        }
        if let Some(col) = (0..cols).find(|&j| (0..rows).all(|i| m.get(i, j) == 0)) {
            return Err(MatrixError::ZeroColumn { col });
        }
        Ok(m)
    }

    /// `diag(r_1, ..., r_n)`, the Fermat sum `x1^r1 + ... + xn^rn`.
    pub fn fermat_sum(exponents: &[u32]) -> Result<Self, MatrixError> {
        let n = exponents.len();
        let mut entries = vec![0; n * n];
        for (i, &r) in exponents.iter().enumerate() {
            entries[i * n + i] = r;
        }
        Self::from_flat(n, n, entries)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn require_square(&self) -> Result<usize, MatrixError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatrixError::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Exponent matrix of the Berglund–Hübsch transpose.
    pub fn transpose(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        Ok(self.transposed())
    }

    pub(crate) fn transposed(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    /// Thom–Sebastiani sum: block-diagonal join on disjoint variable sets.
    pub fn thom_sebastiani(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = vec![0; rows * cols];
        for i in 0..self.rows {
            entries[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
        }
        for i in 0..other.rows {
            let start = (self.rows + i) * cols + self.cols;
            entries[start..start + other.cols].copy_from_slice(other.row(i));
        }
        Self { rows, cols, entries }
    }

    /// Drops column `col`, i.e. sets that variable to 1.
    ///
    /// Returns `None` when the result would contain a constant monomial.
    pub fn restrict_to_one(&self, col: usize) -> Option<Self> {
        let cols = self.cols - 1;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            let row = self.row(i);
            entries.extend_from_slice(&row[..col]);
            entries.extend_from_slice(&row[col + 1..]);
        }
        Self::from_flat(self.rows, cols, entries).ok()
    }

    pub fn permute_rows(&self, order: &[usize]) -> Self {
        debug_assert_eq!(order.len(), self.rows);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in order {
            entries.extend_from_slice(self.row(i));
        }
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Sorted copy of the rows; two matrices agree up to row order iff their
    /// sorted rows agree.
    pub fn sorted_rows(&self) -> Vec<Vec<u32>> {
        let mut rows = self.to_rows();
        rows.sort();
        rows
    }
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> ExponentMatrix {
        ExponentMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rejects_degenerate_shapes() {
        assert_eq!(ExponentMatrix::new(vec![]), Err(MatrixError::Empty));
        assert_eq!(ExponentMatrix::new(vec![vec![1, 0], vec![0, 0]]), Err(MatrixError::ZeroRow { row: 1 }));
        assert_eq!(ExponentMatrix::new(vec![vec![1, 0], vec![2, 0]]), Err(MatrixError::ZeroColumn { col: 1 }));
        assert!(matches!(ExponentMatrix::new(vec![vec![1, 0], vec![2]]), Err(MatrixError::Ragged { row: 1, .. })));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(m(&[&[3, 1], &[0, 2]]).transpose().unwrap(), m(&[&[3, 0], &[1, 2]]));
        assert_eq!(m(&[&[2, 1], &[1, 2]]).transpose().unwrap(), m(&[&[2, 1], &[1, 2]]));
        assert_eq!(m(&[&[2, 1, 0], &[1, 2, 2]]).transpose(), Err(MatrixError::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn thom_sebastiani_examples() {
        assert_eq!(m(&[&[5]]).thom_sebastiani(&m(&[&[3]])), m(&[&[5, 0], &[0, 3]]));
        assert_eq!(m(&[&[3, 1], &[0, 2]]).thom_sebastiani(&m(&[&[2]])), m(&[&[3, 1, 0], &[0, 2, 0], &[0, 0, 2]]));
    }

    #[test]
    fn restriction_drops_a_column() {
        let w = m(&[&[2, 1, 0], &[1, 2, 2]]);
        assert_eq!(w.restrict_to_one(2).unwrap(), m(&[&[2, 1], &[1, 2]]));
        assert_eq!(w.restrict_to_one(1).unwrap(), m(&[&[2, 0], &[1, 2]]));
        assert!(m(&[&[2, 0], &[0, 3]]).restrict_to_one(0).is_none());
    }
}
