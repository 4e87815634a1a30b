//! Exact integer and rational linear algebra on small dense matrices.
//!
//! No floating point and no modular shortcuts: determinants use Bareiss
//! fraction-free elimination over `BigInt`, inverses use Gauss–Jordan over
//! `BigRational`, and the Smith normal form keeps explicit unimodular
//! transforms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::ExponentMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, expected n x (n+1)")]
    BadShape { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vector is zero")]
    ZeroVector,
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| x.into()));
        }
        Self { rows: r, cols: c, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
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

    /// Copy with column `col` removed.
    pub fn without_column(&self, col: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for j in (0..self.cols).filter(|&j| j != col) {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: self.rows, cols: self.cols - 1, data }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Rank over the rationals (Bareiss elimination, no fractions).
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else { continue };
            a.swap_rows(rank, p);
            for i in rank + 1..a.rows {
                for j in col + 1..a.cols {
                    let v = (&a[(rank, col)] * &a[(i, j)] - &a[(i, col)] * &a[(rank, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, col)] = BigInt::zero();
            }
            prev = a[(rank, col)].clone();
            rank += 1;
        }
        rank
    }
}

impl From<&ExponentMatrix> for IntMatrix {
    fn from(m: &ExponentMatrix) -> Self {
        Self::from_rows(&m.to_rows())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Determinant by Bareiss elimination.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt, LinAlgError> {
    if m.rows != m.cols {
        return Err(LinAlgError::NonSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap_rows(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // exact by Sylvester's identity
                let v = (&a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = if n == 0 { BigInt::one() } else { a[(n - 1, n - 1)].clone() };
    Ok(if negate { -det } else { det })
}

/// Signed maximal minors of an `n x (n+1)` matrix:
/// `d_i = (-1)^(i+n+1) det(M without column i)` with 1-based `i`.
///
/// The vector spans the kernel when `M` has rank `n`.
pub fn maximal_minor_vector(m: &IntMatrix) -> Result<Vec<BigInt>, LinAlgError> {
    let n = m.rows;
    if m.cols != n + 1 {
        return Err(LinAlgError::BadShape { rows: m.rows, cols: m.cols });
    }
    (0..=n)
        .map(|i| {
            let minor = det_exact(&m.without_column(i))?;
            // 0-based i: (-1)^(i+1+n+1) = (-1)^(i+n)
            Ok(if (i + n).is_multiple_of(2) { minor } else { -minor })
        })
        .collect()
}

/// gcd of absolute values; 0 for an empty or all-zero slice.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Divides by the gcd and fixes the sign so the last variable's entry is
/// positive (the last nonzero entry, if the last one vanishes).
pub fn primitive_kernel(d: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
    let g = gcd_all(d);
    if g.is_zero() {
        return Err(LinAlgError::ZeroVector);
    }
    let last = d.iter().rev().find(|x| !x.is_zero()).expect("nonzero gcd");
    let g = if last.is_negative() { -g } else { g };
    Ok(d.iter().map(|x| x / &g).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Elementary divisors `s_1 | s_2 | ...`, `min(rows, cols)` of them, zeros last.
    pub diag: Vec<BigInt>,
    /// Unimodular, `rows x rows`.
    pub left: IntMatrix,
    /// Unimodular, `cols x cols`.
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|s| !s.is_zero()).count()
    }

    /// The diagonal matrix `left * M * right` should equal.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows, self.right.rows);
        for (i, s) in self.diag.iter().enumerate() {
            d[(i, i)] = s.clone();
        }
        d
    }
}

/// Smith normal form with transforms, pivoting on the smallest nonzero
/// absolute value (row-major scan, first hit wins).
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole remaining block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    let diag = (0..rows.min(cols)).map(|i| a[(i, i)].clone()).collect();
    SnfResult { diag, left, right }
}

/// Cokernel of `M : Z^cols -> Z^rows`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelStructure {
    pub free_rank: usize,
    /// Orders of the cyclic torsion factors, each `>= 2`, in divisibility order.
    pub torsion_orders: Vec<BigInt>,
}

impl CokernelStructure {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_orders.iter().product()
    }
}

pub fn cokernel_structure(m: &IntMatrix) -> CokernelStructure {
    let snf = smith_normal_form(m);
    let one = BigInt::one();
    CokernelStructure {
        free_rank: m.rows - snf.rank(),
        torsion_orders: snf.diag.into_iter().filter(|s| *s > one).collect(),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self { rows: m.rows, cols: m.cols, data: m.data.iter().cloned().map(BigRational::from_integer).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    /// `M * v` for a rational vector.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut data = vec![BigRational::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        RationalMatrix { rows: self.rows, cols: rhs.cols, data }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Exact inverse by Gauss–Jordan elimination over the rationals.
pub fn inverse_rational(m: &IntMatrix) -> Result<RationalMatrix, LinAlgError> {
    if m.rows != m.cols {
        return Err(LinAlgError::NonSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = RationalMatrix::from_int(m);
    let mut inv = RationalMatrix::from_int(&IntMatrix::identity(n));
    for k in 0..n {
        let p = (k..n).find(|&i| !a[(i, k)].is_zero()).ok_or(LinAlgError::SingularMatrix)?;
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
                inv.data.swap(k * n + j, p * n + j);
            }
        }
        let pivot = a[(k, k)].recip();
        for j in 0..n {
            a[(k, j)] *= &pivot;
            inv[(k, j)] *= &pivot;
        }
        for i in (0..n).filter(|&i| i != k) {
            let f = a[(i, k)].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let da = &f * &a[(k, j)];
                a[(i, j)] -= da;
                let di = &f * &inv[(k, j)];
                inv[(i, j)] -= di;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn determinants() {
        assert_eq!(det_exact(&im(&[&[2, 1], &[1, 2]])).unwrap(), 3.into());
        assert_eq!(det_exact(&im(&[&[2, 1], &[0, 2]])).unwrap(), 4.into());
        for n in 1..6 {
            assert_eq!(det_exact(&IntMatrix::identity(n)).unwrap(), 1.into());
        }
        // needs a row swap
        assert_eq!(det_exact(&im(&[&[0, 1], &[1, 0]])).unwrap(), (-1).into());
        assert_eq!(det_exact(&im(&[&[1, 2], &[2, 4]])).unwrap(), 0.into());
        assert_eq!(det_exact(&im(&[&[1, 2, 3]])), Err(LinAlgError::NonSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn maximal_minors() {
        let loop_w = im(&[&[2, 1, 0], &[1, 2, 2]]);
        let d = maximal_minor_vector(&loop_w).unwrap();
        assert_eq!(d, ints(&[2, -4, 3]));
        assert!(loop_w.mul_vec(&d).iter().all(Zero::is_zero));

        let chain_w = im(&[&[2, 1, 0], &[0, 2, 2]]);
        let d = maximal_minor_vector(&chain_w).unwrap();
        assert_eq!(d, ints(&[2, -4, 4]));
        assert!(chain_w.mul_vec(&d).iter().all(Zero::is_zero));

        assert_eq!(maximal_minor_vector(&im(&[&[5, 1]])).unwrap(), ints(&[-1, 5]));
        assert_eq!(maximal_minor_vector(&im(&[&[1, 2], &[3, 4]])), Err(LinAlgError::BadShape { rows: 2, cols: 2 }));
    }

    #[test]
    fn primitive_kernels() {
        assert_eq!(primitive_kernel(&ints(&[2, -4, 4])).unwrap(), ints(&[1, -2, 2]));
        assert_eq!(primitive_kernel(&ints(&[2, -4, 3])).unwrap(), ints(&[2, -4, 3]));
        assert_eq!(primitive_kernel(&ints(&[-1, 5])).unwrap(), ints(&[-1, 5]));
        assert_eq!(primitive_kernel(&ints(&[3, -6, -9])).unwrap(), ints(&[-1, 2, 3]));
        assert_eq!(primitive_kernel(&ints(&[4, -2, 0])).unwrap(), ints(&[-2, 1, 0]));
        assert_eq!(primitive_kernel(&ints(&[0, 0])), Err(LinAlgError::ZeroVector));
        assert_eq!(primitive_kernel(&[]), Err(LinAlgError::ZeroVector));
    }

    fn check_snf(m: &IntMatrix, expected: &[i64]) {
        let s = smith_normal_form(m);
        assert_eq!(s.diag, ints(expected));
        assert_eq!(&(&s.left * m) * &s.right, s.diagonal_matrix());
        assert_eq!(det_exact(&s.left).unwrap().abs(), BigInt::one());
        assert_eq!(det_exact(&s.right).unwrap().abs(), BigInt::one());
    }

    #[test]
    fn smith_forms() {
        check_snf(&im(&[&[2, 0], &[0, 3]]), &[1, 6]);
        check_snf(&im(&[&[2, 1], &[1, 2]]), &[1, 3]);
        check_snf(&IntMatrix::zeros(2, 3), &[0, 0]);
        check_snf(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), &[2, 6, 12]);
        check_snf(&im(&[&[2, 0], &[0, 2], &[-1, -1]]), &[1, 2]);
    }

    #[test]
    fn cokernels() {
        let c = cokernel_structure(&im(&[&[2, 0], &[0, 2], &[-1, -1]]));
        assert_eq!(c, CokernelStructure { free_rank: 1, torsion_orders: ints(&[2]) });
        let c = cokernel_structure(&im(&[&[5], &[-1]]));
        assert_eq!(c, CokernelStructure { free_rank: 1, torsion_orders: vec![] });
        let c = cokernel_structure(&IntMatrix::identity(3));
        assert_eq!(c, CokernelStructure { free_rank: 0, torsion_orders: vec![] });
    }

    #[test]
    fn inverses() {
        let inv = inverse_rational(&im(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(inv.row(0), &[q(1, 2), q(0, 1)]);
        assert_eq!(inv.row(1), &[q(0, 1), q(1, 2)]);

        let m = im(&[&[2, 1], &[1, 2]]);
        let inv = inverse_rational(&m).unwrap();
        assert_eq!(inv.row(0), &[q(2, 3), q(-1, 3)]);
        assert_eq!(inv.row(1), &[q(-1, 3), q(2, 3)]);
        assert!((&inv * &RationalMatrix::from_int(&m)).is_identity());

        let m = im(&[&[3, 1], &[0, 2]]);
        let inv = inverse_rational(&m).unwrap();
        assert_eq!(inv.row(0), &[q(1, 3), q(-1, 6)]);
        assert_eq!(inv.row(1), &[q(0, 1), q(1, 2)]);

        assert_eq!(inverse_rational(&im(&[&[1, 2], &[2, 4]])), Err(LinAlgError::SingularMatrix));
    }

    #[test]
    fn ranks() {
        assert_eq!(im(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(im(&[&[0, 0, 1], &[0, 0, 2], &[1, 0, 0]]).rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
    }
}
