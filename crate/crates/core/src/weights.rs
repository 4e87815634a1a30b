//! Quasihomogeneous weight systems.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::intlin::{inverse_rational, IntMatrix, LinAlgError};
use crate::matrix::ExponentMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("exponent matrix is singular")]
    SingularMatrix,
    #[error("weight of x{} is not positive", .variable + 1)]
    NoPositiveWeights { variable: usize },
    #[error("weights do not fit in 64 bits")]
    Overflow,
}

/// Weights `q_j` and degree `d` with `A q = d (1, ..., 1)`.
///
/// `d` is the least positive integer for which all `q_j` are integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub weights: Vec<u64>,
    pub degree: u64,
}

impl WeightSystem {
    /// Checks `A q = d 1` exactly.
    pub fn is_solution_of(&self, m: &ExponentMatrix) -> bool {
        m.cols() == self.weights.len()
            && (0..m.rows()).all(|i| {
                let s: u128 = m.row(i).iter().zip(&self.weights).map(|(&a, &q)| u128::from(a) * u128::from(q)).sum();
                s == u128::from(self.degree)
            })
    }

    /// Weighted degree of an exponent vector.
    pub fn degree_of(&self, exponents: &[u32]) -> u64 {
        exponents.iter().zip(&self.weights).map(|(&e, &q)| u64::from(e) * q).sum()
    }

    /// `d / q_i` when every weight divides the degree.
    pub fn divisor_ratios(&self) -> Option<Vec<u64>> {
        self.weights.iter().map(|&q| self.degree.is_multiple_of(q).then(|| self.degree / q)).collect()
    }
}

/// Solves `A q = d 1` over the rationals and scales to the minimal integral degree.
pub fn weight_system(m: &ExponentMatrix) -> Result<WeightSystem, WeightError> {
    if !m.is_square() {
        return Err(WeightError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let inv = inverse_rational(&IntMatrix::from(m)).map_err(|e| match e {
        LinAlgError::SingularMatrix => WeightError::SingularMatrix,
        _ => unreachable!("square input"),
    })?;
    let ones: Vec<BigRational> = (0..m.cols()).map(|_| BigRational::one()).collect();
    let unit = inv.mul_vec(&ones);
    if let Some(variable) = unit.iter().position(|q| !q.is_positive()) {
        return Err(WeightError::NoPositiveWeights { variable });
    }
    let degree = unit.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let weights = unit
        .iter()
        .map(|q| {
            let w = q * BigRational::from_integer(degree.clone());
            debug_assert!(w.is_integer() && !w.is_zero());
            w.to_integer().to_u64().ok_or(WeightError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let degree = degree.to_u64().ok_or(WeightError::Overflow)?;
    Ok(WeightSystem { weights, degree })
}
