//! Maximal diagonal symmetry group and the one-parameter subgroup of a cleave.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classify::AtomKind;
use crate::intlin::{cokernel_structure, gcd_all, maximal_minor_vector, primitive_kernel, IntMatrix, LinAlgError};
use crate::matrix::ExponentMatrix;

/// `Gamma_W` up to isomorphism: `G_m^free_rank x prod Z/torsion_orders`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub free_rank: usize,
    pub torsion_orders: Vec<BigInt>,
    pub torsion_order_total: BigInt,
}

/// Structure of the group of `(t_1, ..., t_n, t_{n+1})` with
/// `W(t_1 x_1, ..., t_n x_n) = t_{n+1} W(x)`.
///
/// Its character group is the cokernel of `Z^k -> Z^(n+1)` sending monomial
/// `i` to `(a_i1, ..., a_in, -1)`, i.e. the exponent matrix transposed with a
/// row of `-1`s appended.
pub fn gamma_structure(m: &ExponentMatrix) -> GroupStructure {
    let (k, n) = (m.rows(), m.cols());
    let mut chars = IntMatrix::zeros(n + 1, k);
    for i in 0..k {
        for j in 0..n {
            chars[(j, i)] = BigInt::from(m.get(i, j));
        }
        chars[(n, i)] = BigInt::from(-1);
    }
    let coker = cokernel_structure(&chars);
    let torsion_order_total = coker.torsion_order();
    GroupStructure { free_rank: coker.free_rank, torsion_orders: coker.torsion_orders, torsion_order_total }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("matrix is {rows}x{cols}, expected n x (n+1)")]
    BadShape { rows: usize, cols: usize },
    #[error("matrix does not have full rank")]
    RankDeficient,
    #[error("weights {c:?} violate c_(n+1) > 0 and c_n < 0")]
    SignConventionViolated { c: Vec<BigInt> },
    #[error("maximal minors {generic:?} disagree with the closed form {closed:?}")]
    ClosedFormMismatch { generic: Vec<BigInt>, closed: Vec<BigInt> },
}

/// One-parameter subgroup data of an augmented `n x (n+1)` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VgitData {
    /// Signed maximal minors.
    pub d: Vec<BigInt>,
    /// `d / gcd`, primitive, last entry positive.
    pub c: Vec<BigInt>,
    pub gcd: BigInt,
    pub sum_d: BigInt,
    pub sum_c: BigInt,
}

impl VgitData {
    /// Variables with positive weight (generators of the unstable ideal `I_+`).
    pub fn positive_variables(&self) -> Vec<usize> {
        (0..self.c.len()).filter(|&i| self.c[i].is_positive()).collect()
    }

    pub fn negative_variables(&self) -> Vec<usize> {
        (0..self.c.len()).filter(|&i| self.c[i].is_negative()).collect()
    }
}

/// Closed-form minors of the loop augmentation `... + x_n^{a_n} x_1 x_{n+1}^b`.
pub fn loop_minor_closed_form(a: &[u32], b: u32) -> Vec<BigInt> {
    let n = a.len();
    let mut d = alternating_prefix(a, b);
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    d.push(a.iter().map(|&x| BigInt::from(x)).product::<BigInt>() + sign);
    d
}

/// Closed-form minors of the chain augmentation `... + x_n^{a_n} x_{n+1}^b`.
pub fn chain_minor_closed_form(a: &[u32], b: u32) -> Vec<BigInt> {
    let mut d = alternating_prefix(a, b);
    d.push(a.iter().map(|&x| BigInt::from(x)).product());
    d
}

/// `d_j = (-1)^(j+n+1) b a_1 ... a_{j-1}` for `1 <= j <= n`.
fn alternating_prefix(a: &[u32], b: u32) -> Vec<BigInt> {
    let n = a.len();
    let mut prefix = BigInt::from(b);
    (1..=n)
        .map(|j| {
            let v = if (j + n + 1).is_multiple_of(2) { prefix.clone() } else { -prefix.clone() };
            prefix *= a[j - 1];
            v
        })
        .collect()
}

/// Recognizes the standard loop/chain augmentation pattern.
pub fn recognize_augmentation(m: &ExponentMatrix) -> Option<(AtomKind, Vec<u32>, u32)> {
    let n = m.rows();
    if m.cols() != n + 1 {
        return None;
    }
    let mut a = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let ai = row[i];
        if ai < 2 {
            return None;
        }
        a.push(ai);
        for (j, &e) in row.iter().enumerate() {
            let expected = if j == i {
                ai
            } else if i + 1 < n && j == i + 1 {
                1
            } else if i + 1 == n && (j == n || j == 0) {
                // b, and the loop's wrap-around 1 (checked below)
                e
            } else {
                0
            };
            if e != expected {
                return None;
            }
        }
    }
    let last = m.row(n - 1);
    let b = last[n];
    if b < 2 {
        return None;
    }
    match (n >= 2, last[0]) {
        (true, 1) => Some((AtomKind::Loop, a, b)),
        (_, 0) | (false, _) => Some((AtomKind::Chain, a, b)),
        _ => None,
    }
}

/// Signed minors, primitive weights and sign checks for an augmented matrix.
///
/// When the matrix is a loop or chain augmentation the minors are also
/// compared with their closed forms.
pub fn vgit_lambda(m: &ExponentMatrix) -> Result<VgitData, SymmetryError> {
    let n = m.rows();
    if m.cols() != n + 1 {
        return Err(SymmetryError::BadShape { rows: m.rows(), cols: m.cols() });
    }
    let a = IntMatrix::from(m);
    let d = maximal_minor_vector(&a).map_err(|_| SymmetryError::BadShape { rows: m.rows(), cols: m.cols() })?;
    let c = match primitive_kernel(&d) {
        Ok(c) => c,
        Err(LinAlgError::ZeroVector) => return Err(SymmetryError::RankDeficient),
        Err(_) => unreachable!(),
    };
    if !(c[n].is_positive() && c[n - 1].is_negative()) {
        return Err(SymmetryError::SignConventionViolated { c });
    }
    if let Some((kind, exps, b)) = recognize_augmentation(m) {
        let closed = match kind {
            AtomKind::Loop => loop_minor_closed_form(&exps, b),
            _ => chain_minor_closed_form(&exps, b),
        };
        if closed != d {
            return Err(SymmetryError::ClosedFormMismatch { generic: d, closed });
        }
    }
    debug_assert!(a.mul_vec(&c).iter().all(Zero::is_zero));
    let gcd = gcd_all(&d);
    let sum_d: BigInt = d.iter().sum();
    let sum_c: BigInt = c.iter().sum();
    Ok(VgitData { d, c, gcd, sum_d, sum_c })
}

/// `t = |ker chi_{n+1}| * |sum c| = |sum d|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCount {
    pub t: BigInt,
    /// `gcd(d)`, the number of exceptional objects per orthogonal block.
    pub kernel_order: BigInt,
    /// `|sum c|`, the number of blocks.
    pub blocks: BigInt,
}

pub fn exceptional_block_count(v: &VgitData) -> BlockCount {
    let blocks = v.sum_c.abs();
    let t = v.sum_d.abs();
    debug_assert_eq!(&v.gcd * &blocks, t);
    BlockCount { t, kernel_order: v.gcd.clone(), blocks }
}

/// Torsion order of the cokernel of `A_W : Z^(n+1) -> Z^n`.
pub fn cokernel_torsion_order(m: &ExponentMatrix) -> BigInt {
    let c = cokernel_structure(&IntMatrix::from(m));
    if c.torsion_orders.is_empty() {
        BigInt::one()
    } else {
        c.torsion_order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(rows: &[&[u32]]) -> ExponentMatrix {
        ExponentMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_structure(&m(&[&[5]]));
        assert_eq!((g.free_rank, g.torsion_orders.len()), (1, 0));
        let g = gamma_structure(&m(&[&[2, 0], &[0, 2]]));
        assert_eq!((g.free_rank, g.torsion_orders.clone()), (1, ints(&[2])));
        assert_eq!(g.torsion_order_total, 2.into());
        let g = gamma_structure(&m(&[&[2, 1], &[1, 2]]));
        assert_eq!((g.free_rank, g.torsion_orders.len()), (1, 0));
        assert_eq!(g.torsion_order_total, 1.into());
    }

    #[test]
    fn gamma_uses_monomial_characters() {
        // x1^3*x2 + x2^2: t2 = s^3, t1 = s, t3 = s^6, a torus with no torsion
        let g = gamma_structure(&m(&[&[3, 1], &[0, 2]]));
        assert_eq!((g.free_rank, g.torsion_orders.len()), (1, 0));
        // transpose x1^3 + x1*x2^2 has Gamma = G_m x Z/2
        let g = gamma_structure(&m(&[&[3, 0], &[1, 2]]));
        assert_eq!((g.free_rank, g.torsion_orders.clone()), (1, ints(&[2])));
    }

    #[test]
    fn vgit_examples() {
        let v = vgit_lambda(&m(&[&[2, 1, 0], &[1, 2, 2]])).unwrap();
        assert_eq!((v.d.clone(), v.c.clone()), (ints(&[2, -4, 3]), ints(&[2, -4, 3])));
        assert_eq!((v.gcd.clone(), v.sum_d.clone()), (1.into(), 1.into()));
        assert_eq!(v.positive_variables(), vec![0, 2]);
        assert_eq!(v.negative_variables(), vec![1]);

        let v = vgit_lambda(&m(&[&[2, 1, 0], &[0, 2, 2]])).unwrap();
        assert_eq!((v.d.clone(), v.c.clone()), (ints(&[2, -4, 4]), ints(&[1, -2, 2])));
        assert_eq!((v.gcd.clone(), v.sum_d.clone()), (2.into(), 2.into()));

        let v = vgit_lambda(&m(&[&[2, 1, 0], &[0, 2, 4]])).unwrap();
        assert_eq!(v.d, ints(&[4, -8, 4]));
        assert_eq!(v.sum_d, 0.into());
    }

    #[test]
    fn block_counts() {
        let count = |rows: &[&[u32]]| exceptional_block_count(&vgit_lambda(&m(rows)).unwrap());
        assert_eq!(
            count(&[&[2, 1, 0], &[1, 2, 2]]),
            BlockCount { t: 1.into(), kernel_order: 1.into(), blocks: 1.into() }
        );
        assert_eq!(
            count(&[&[2, 1, 0], &[0, 2, 2]]),
            BlockCount { t: 2.into(), kernel_order: 2.into(), blocks: 1.into() }
        );
        assert_eq!(count(&[&[2, 1, 0], &[0, 2, 4]]).t, 0.into());
    }

    #[test]
    fn vgit_errors() {
        assert_eq!(vgit_lambda(&m(&[&[2, 1], &[1, 2]])), Err(SymmetryError::BadShape { rows: 2, cols: 2 }));
        // x1^2*x3 + x2^2: c = (-1, 0, 2), so c_n is not negative
        assert!(matches!(
            vgit_lambda(&m(&[&[2, 0, 1], &[0, 2, 0]])),
            Err(SymmetryError::SignConventionViolated { .. })
        ));
        assert_eq!(vgit_lambda(&m(&[&[2, 2, 2], &[1, 1, 1]])), Err(SymmetryError::RankDeficient));
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(loop_minor_closed_form(&[2, 2], 2), ints(&[2, -4, 3]));
        assert_eq!(chain_minor_closed_form(&[2, 2], 2), ints(&[2, -4, 4]));
        assert_eq!(chain_minor_closed_form(&[5], 1), ints(&[-1, 5]));
        assert_eq!(recognize_augmentation(&m(&[&[2, 1, 0], &[1, 2, 2]])), Some((AtomKind::Loop, vec![2, 2], 2)));
        assert_eq!(recognize_augmentation(&m(&[&[3, 4]])), Some((AtomKind::Chain, vec![3], 4)));
        assert_eq!(recognize_augmentation(&m(&[&[2, 0, 1], &[0, 2, 0]])), None);
    }

    #[test]
    fn torsion_matches_gcd() {
        assert_eq!(cokernel_torsion_order(&m(&[&[2, 1, 0], &[0, 2, 2]])), 2.into());
        assert_eq!(cokernel_torsion_order(&m(&[&[2, 1, 0], &[0, 2, 4]])), 4.into());
        assert_eq!(cokernel_torsion_order(&m(&[&[2, 1, 0], &[1, 2, 2]])), 1.into());
    }
}
