//! Milnor numbers, two ways.
//!
//! The closed forms work atom by atom and are multiplicative over
//! Thom–Sebastiani sums. The brute-force route never looks at the
//! classification: it grades `C[x] / <dw/dx_i>` by the weight system and
//! counts each graded piece as (number of monomials) - (rank of the
//! multiplication map from the partials), exactly over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classify::{classify, Atom, AtomKind, Classification, ClassifyError};
use crate::matrix::ExponentMatrix;
use crate::weights::{weight_system, WeightError, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("classification is not valid")]
    InvalidClassification,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("not quasihomogeneous with positive weights: {0}")]
    NotQuasihomogeneous(WeightError),
    #[error("Jacobian ring does not vanish above the socle degree; the critical point is not isolated")]
    NotIsolated,
    #[error("{what} is {value}, above the limit {limit}")]
    LimitExceeded { what: &'static str, value: u128, limit: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MilnorLimits {
    /// Total monomials enumerated across all degrees up to socle + max weight.
    pub max_monomials: usize,
    pub max_socle: u64,
}

impl Default for MilnorLimits {
    fn default() -> Self {
        Self { max_monomials: 200_000, max_socle: 5_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilnorMethod {
    ClosedForm,
    BruteForce,
}

impl MilnorMethod {
    pub fn name(self) -> &'static str {
        match self {
            MilnorMethod::ClosedForm => "closed_form",
            MilnorMethod::BruteForce => "brute_force",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorReport {
    pub value: BigInt,
    pub method: MilnorMethod,
    /// Dimension of each weighted degree `0..=socle` (brute force only).
    pub graded_dims: Option<Vec<u64>>,
    pub socle_degree: Option<u64>,
}

impl MilnorReport {
    pub fn closed(value: BigInt) -> Self {
        Self { value, method: MilnorMethod::ClosedForm, graded_dims: None, socle_degree: None }
    }
}

fn product(t: &[u32]) -> BigInt {
    t.iter().map(|&a| BigInt::from(a)).product()
}

/// `mu(w^T)` for the chain `w = x1^t1 x2 + ... + xn^tn`.
pub fn chain_transpose_formula(t: &[u32]) -> BigInt {
    let n = t.len();
    let prefix = |k: usize| product(&t[..k]);
    if n.is_multiple_of(2) {
        let mut mu = product(t);
        for k in 1..=n / 2 {
            mu -= (BigInt::from(t[2 * k - 2]) - 1) * prefix(2 * k - 2);
        }
        mu
    } else {
        let mut mu = product(t) - 1;
        for k in 1..=(n - 1) / 2 {
            mu -= (BigInt::from(t[2 * k - 1]) - 1) * prefix(2 * k - 1);
        }
        mu
    }
}

/// `mu(w^T)` for the loop `w = x1^t1 x2 + ... + xn^tn x1`.
pub fn loop_transpose_formula(t: &[u32]) -> BigInt {
    product(t)
}

/// Milnor number of a single atom, or of its transpose.
///
/// The lemmas express `mu(w^T)` through `w`'s exponents; `mu(w)` is obtained
/// by applying them to the transposed atom.
pub fn atom_milnor(atom: &Atom, of_transpose: bool) -> BigInt {
    match atom.kind {
        AtomKind::Fermat => BigInt::from(atom.exponents[0]) - 1,
        AtomKind::Chain | AtomKind::Loop => {
            let source = if of_transpose { atom.clone() } else { atom.transpose() };
            match source.kind {
                AtomKind::Chain => chain_transpose_formula(&source.exponents),
                _ => loop_transpose_formula(&source.exponents),
            }
        }
    }
}

/// Product of the per-atom closed forms.
pub fn milnor_closed(c: &Classification, of_transpose: bool) -> Result<BigInt, MilnorError> {
    if !c.is_valid() {
        return Err(MilnorError::InvalidClassification);
    }
    Ok(c.atoms.iter().map(|a| atom_milnor(a, of_transpose)).product())
}

/// `mu(w^T)` from the closed forms.
pub fn milnor_of_transpose(m: &ExponentMatrix) -> Result<BigInt, MilnorError> {
    milnor_closed(&classify(m)?, true)
}

/// A term `coefficient * x^exponents` of a partial derivative.
#[derive(Debug, Clone)]
struct Term {
    coefficient: u32,
    exponents: Vec<u32>,
}

/// The graded Jacobian ring of a quasihomogeneous polynomial with unit coefficients.
#[derive(Debug, Clone)]
pub struct JacobianRing {
    weights: WeightSystem,
    partials: Vec<Vec<Term>>,
}

impl JacobianRing {
    pub fn new(m: &ExponentMatrix) -> Result<Self, MilnorError> {
        let weights = weight_system(m).map_err(MilnorError::NotQuasihomogeneous)?;
        let n = m.cols();
        let partials = (0..n)
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| m.get(i, j) > 0)
                    .map(|i| {
                        let mut exponents = m.row(i).to_vec();
                        exponents[j] -= 1;
                        Term { coefficient: m.get(i, j), exponents }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { weights, partials })
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    fn num_vars(&self) -> usize {
        self.weights.weights.len()
    }

    /// `n d - 2 sum q_i`, or `None` when negative.
    pub fn socle_degree(&self) -> Option<u64> {
        let n = self.num_vars() as u64;
        let twice: u64 = self.weights.weights.iter().map(|q| 2 * q).sum();
        (n * self.weights.degree).checked_sub(twice)
    }

    fn max_weight(&self) -> u64 {
        self.weights.weights.iter().copied().max().unwrap_or(0)
    }

    /// Number of monomials in each weighted degree `0..=top`.
    pub fn monomial_counts(&self, top: u64) -> Vec<u128> {
        let mut counts = vec![0u128; top as usize + 1];
        counts[0] = 1;
        for &q in &self.weights.weights {
            let q = q as usize;
            for delta in q..counts.len() {
                counts[delta] = counts[delta].saturating_add(counts[delta - q]);
            }
        }
        counts
    }

    /// Monomials of weighted degree `delta`, lexicographically ordered.
    pub fn monomials_of_degree(&self, delta: u64) -> Vec<Vec<u32>> {
        fn rec(q: &[u64], j: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if j + 1 == q.len() {
                if left.is_multiple_of(q[j]) {
                    cur.push((left / q[j]) as u32);
                    out.push(cur.clone());
                    cur.pop();
                }
                return;
            }
            for e in 0..=left / q[j] {
                cur.push(e as u32);
                rec(q, j + 1, left - e * q[j], cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.weights.weights, 0, delta, &mut Vec::with_capacity(self.num_vars()), &mut out);
        out
    }

    /// Dimension of the degree-`delta` piece of the Jacobian ring.
    pub fn dim_in_degree(&self, delta: u64) -> u64 {
        let basis = self.monomials_of_degree(delta);
        if basis.is_empty() {
            return 0;
        }
        let index: BTreeMap<&[u32], usize> = basis.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let d = self.weights.degree;
        let mut echelon = Echelon::default();
        for (i, partial) in self.partials.iter().enumerate() {
            let shift = d - self.weights.weights[i];
            let Some(low) = delta.checked_sub(shift) else { continue };
            for m in self.monomials_of_degree(low) {
                let mut v: Vec<(usize, BigInt)> = partial
                    .iter()
                    .map(|t| {
                        let prod: Vec<u32> = m.iter().zip(&t.exponents).map(|(a, b)| a + b).collect();
                        (index[prod.as_slice()], BigInt::from(t.coefficient))
                    })
                    .collect();
                v.sort_by_key(|e| e.0);
                echelon.insert(v);
                if echelon.rank() == basis.len() {
                    return 0;
                }
            }
        }
        (basis.len() - echelon.rank()) as u64
    }
}

/// Row echelon form of sparse integer vectors keyed by leading index.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Vec<(usize, BigInt)>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut v: Vec<(usize, BigInt)>) {
        loop {
            let Some((lead, _)) = v.first() else { return };
            match self.pivots.get(lead) {
                None => {
                    let lead = *lead;
                    primitive(&mut v);
                    self.pivots.insert(lead, v);
                    return;
                }
                Some(p) => v = eliminate(p, &v),
            }
        }
    }
}

/// `p[0] * v - v[0] * p`, which cancels the shared leading entry.
fn eliminate(p: &[(usize, BigInt)], v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let a = &p[0].1;
    let b = &v[0].1;
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(p.len() + v.len());
    let (mut i, mut j) = (1, 1);
    while i < p.len() || j < v.len() {
        let pi = p.get(i).map(|e| e.0);
        let vj = v.get(j).map(|e| e.0);
        let (idx, val) = match (pi, vj) {
            (Some(x), Some(y)) if x == y => {
                let r = (&a * &v[j].1, &b * &p[i].1);
                i += 1;
                j += 1;
                (x, r.0 - r.1)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (x, -(&b * &p[i - 1].1))
            }
            (Some(x), None) => {
                i += 1;
                (x, -(&b * &p[i - 1].1))
            }
            (_, Some(y)) => {
                j += 1;
                (y, &a * &v[j - 1].1)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    primitive(&mut out);
    out
}

fn primitive(v: &mut [(usize, BigInt)]) {
    let g = v.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.1));
    if !g.is_zero() && !g.is_one() {
        for e in v.iter_mut() {
            e.1 /= &g;
        }
    }
    if v.first().is_some_and(|e| e.1.is_negative()) {
        for e in v.iter_mut() {
            e.1 = -core::mem::take(&mut e.1);
        }
    }
}

/// Milnor number as the dimension of the graded Jacobian ring.
///
/// Degrees `socle+1 ..= socle + max q` are also checked to vanish; if they do
/// every higher degree vanishes too, so the count certifies an isolated
/// critical point.
pub fn milnor_brute(m: &ExponentMatrix, limits: &MilnorLimits) -> Result<MilnorReport, MilnorError> {
    let ring = JacobianRing::new(m)?;
    let socle = ring.socle_degree().ok_or(MilnorError::NotIsolated)?;
    if socle > limits.max_socle {
        return Err(MilnorError::LimitExceeded {
            what: "socle degree",
            value: socle.into(),
            limit: limits.max_socle.into(),
        });
    }
    let top = socle + ring.max_weight();
    let counts = ring.monomial_counts(top);
    let total = counts.iter().fold(0u128, |s, &c| s.saturating_add(c));
    if total > limits.max_monomials as u128 {
        return Err(MilnorError::LimitExceeded {
            what: "monomial count",
            value: total,
            limit: limits.max_monomials as u128,
        });
    }
    let graded: Vec<u64> =
        (0..=socle).map(|delta| if counts[delta as usize] == 0 { 0 } else { ring.dim_in_degree(delta) }).collect();
    for delta in socle + 1..=top {
        if counts[delta as usize] != 0 && ring.dim_in_degree(delta) != 0 {
            return Err(MilnorError::NotIsolated);
        }
    }
    let value = graded.iter().map(|&g| BigInt::from(g)).sum();
    Ok(MilnorReport { value, method: MilnorMethod::BruteForce, graded_dims: Some(graded), socle_degree: Some(socle) })
}
