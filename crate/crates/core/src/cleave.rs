//! Kreuzer–Skarke cleaves and the recursive decomposition they induce.
//!
//! A loop or chain `w_+` on `x_1..x_n` is augmented by a fresh variable
//! `x_{n+1}` in its last monomial. Setting `x_{n+1} = 1` gives back `w_+`;
//! setting `x_n = 1` gives `w_-` (a chain for a loop, a shorter chain plus a
//! Fermat monomial for a chain). The two sides differ by `|sum d|` exceptional
//! objects, where `d` are the signed maximal minors of the augmented matrix.
//!
//! In `w_-` the new variable takes over the column slot of `x_n`, so both
//! sides live on `n` variables and keep the same monomial (row) order.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::classify::{classify, Atom, AtomKind, Classification, ClassifyError};
use crate::matrix::ExponentMatrix;
use crate::milnor::{atom_milnor, milnor_closed, milnor_of_transpose, MilnorError};
use crate::symmetry::{vgit_lambda, SymmetryError, VgitData};
use crate::weights::{weight_system, WeightError, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CleaveError {
    #[error("Fermat atoms have no cleave")]
    FermatNotAugmentable,
    #[error("b = {0} is below 2")]
    BadB(u32),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error("transpose weights: {0}")]
    Weights(WeightError),
    #[error("mu(w+^T) - mu(w-^T) = {mu_diff} but sum d = {sum_d}")]
    IdentityViolated { mu_diff: BigInt, sum_d: BigInt },
    #[error("restriction x_n = 1 of {0:?} is not the expected chain/Fermat pair")]
    UnexpectedMinusSide(ExponentMatrix),
    #[error("cleave of {atom} with b = {b} falls in case A (sum d = {sum_d} < 0)")]
    CaseA { atom: Atom, b: u32, sum_d: BigInt },
    #[error("tree length {total} differs from mu(w^T) = {mu}")]
    LengthMismatch { total: BigInt, mu: BigInt },
    #[error("{atom}: transpose weight {r_last} does not divide d^T = {degree}")]
    NotGorenstein { atom: Atom, r_last: u64, degree: u64 },
    #[error("Gorenstein cleave of {atom} with b = {b} has sum d = {sum_d}")]
    NonzeroSumD { atom: Atom, b: u32, sum_d: BigInt },
    #[error("terminal Fermat exponents {terminal:?} differ from d^T / r = {expected:?}")]
    TerminalMismatch { terminal: Vec<u32>, expected: Vec<u64> },
}

/// Augments the last monomial of a loop or chain by `x_{n+1}^b`.
pub fn augment(atom: &Atom, b: u32) -> Result<ExponentMatrix, CleaveError> {
    if atom.kind == AtomKind::Fermat {
        return Err(CleaveError::FermatNotAugmentable);
    }
    if b < 2 {
        return Err(CleaveError::BadB(b));
    }
    let n = atom.len();
    let local = atom.local_matrix();
    let mut entries = Vec::with_capacity(n * (n + 1));
    for i in 0..n {
        entries.extend_from_slice(local.row(i));
        entries.push(if i + 1 == n { b } else { 0 });
    }
    Ok(ExponentMatrix::from_flat(n, n + 1, entries).expect("augmented rows and columns are nonzero"))
}

/// Which side of the wall carries the extra exceptional objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CleaveCase {
    /// `sum d < 0`: `D(w_-) = <E_1..E_t, D(w_+)>`.
    A,
    /// `sum d = 0`: equivalence.
    B,
    /// `sum d > 0`: `D(w_+) = <E_1..E_t, D(w_-)>`.
    C,
}

impl fmt::Display for CleaveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CleaveCase::A => "A",
            CleaveCase::B => "B",
            CleaveCase::C => "C",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleaveStep {
    /// `w_+` as an atom on local variables `0..n`.
    pub atom: Atom,
    pub b: u32,
    /// `W`, `n x (n+1)`.
    pub augmented: ExponentMatrix,
    pub w_plus: Classification,
    /// `W` at `x_n = 1`; column `n-1` is `x_{n+1}`.
    pub minus_matrix: ExponentMatrix,
    pub w_minus: Classification,
    pub vgit: VgitData,
    pub case: CleaveCase,
    pub t: BigInt,
    pub mu_plus: BigInt,
    pub mu_minus: BigInt,
}

impl CleaveStep {
    /// Original-`W` index (0-based) of each `w_-` column.
    pub fn minus_variables(&self) -> Vec<usize> {
        let n = self.atom.len();
        (0..n - 1).chain(core::iter::once(n)).collect()
    }
}

/// One VGIT wall crossing for a loop or chain.
pub fn cleave_step(atom: &Atom, b: u32) -> Result<CleaveStep, CleaveError> {
    let augmented = augment(atom, b)?;
    let atom = Atom::local(atom.kind, atom.exponents.clone()).expect("valid atom");
    let n = atom.len();

    let w_plus = classify(&atom.local_matrix())?;
    let minus_matrix = augmented.restrict_to_one(n - 1).expect("rows stay nonconstant");
    let w_minus = classify(&minus_matrix)?;
    if !minus_side_matches(&atom, b, &w_minus) {
        return Err(CleaveError::UnexpectedMinusSide(augmented));
    }

    let vgit = vgit_lambda(&augmented)?;
    let mu_plus = atom_milnor(&atom, true);
    let mu_minus = milnor_closed(&w_minus, true)?;
    let mu_diff = &mu_plus - &mu_minus;
    if mu_diff != vgit.sum_d {
        return Err(CleaveError::IdentityViolated { mu_diff, sum_d: vgit.sum_d });
    }
    let case = if vgit.sum_d.is_positive() {
        CleaveCase::C
    } else if vgit.sum_d.is_zero() {
        CleaveCase::B
    } else {
        CleaveCase::A
    };
    let t = vgit.sum_d.abs();
    Ok(CleaveStep { atom, b, augmented, w_plus, minus_matrix, w_minus, vgit, case, t, mu_plus, mu_minus })
}

/// Loop: `Chain(b, a_1, ..., a_{n-1})` headed by the new variable.
/// Chain: `Chain(a_1, ..., a_{n-1}) + Fermat(b)`.
fn minus_side_matches(atom: &Atom, b: u32, w_minus: &Classification) -> bool {
    let n = atom.len();
    let a = &atom.exponents;
    let got: Vec<(AtomKind, &[u32])> = w_minus.atoms.iter().map(|x| (x.kind, x.exponents.as_slice())).collect();
    match atom.kind {
        AtomKind::Loop => {
            let mut exps = vec![b];
            exps.extend_from_slice(&a[..n - 1]);
            got == [(AtomKind::Chain, exps.as_slice())]
        }
        AtomKind::Chain if n == 1 => got == [(AtomKind::Fermat, &[b][..])],
        AtomKind::Chain => {
            let head = if n == 2 { AtomKind::Fermat } else { AtomKind::Chain };
            got == [(head, &a[..n - 1]), (AtomKind::Fermat, &[b][..])]
        }
        AtomKind::Fermat => false,
    }
}

/// How `b` is chosen at each cleave of [`decompose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BStrategy {
    /// `b = 2`.
    #[default]
    Min,
    /// `b = a_n`, the last exponent.
    Max,
    /// `b = d^T / r_n`; fails on atoms where that is not an integer.
    Gorenstein,
    Fixed(u32),
}

impl BStrategy {
    pub fn choose(self, atom: &Atom) -> Result<u32, CleaveError> {
        match self {
            BStrategy::Min => Ok(2),
            BStrategy::Max => Ok(*atom.exponents.last().expect("nonempty atom")),
            BStrategy::Fixed(b) => Ok(b),
            BStrategy::Gorenstein => gorenstein_b(atom),
        }
    }
}

fn transpose_weights(atom: &Atom) -> Result<WeightSystem, CleaveError> {
    let t = atom.local_matrix().transpose().expect("square");
    weight_system(&t).map_err(CleaveError::Weights)
}

fn gorenstein_b(atom: &Atom) -> Result<u32, CleaveError> {
    let ws = transpose_weights(atom)?;
    let r_last = *ws.weights.last().expect("nonempty atom");
    if ws.degree % r_last != 0 {
        return Err(CleaveError::NotGorenstein { atom: atom.clone(), r_last, degree: ws.degree });
    }
    u32::try_from(ws.degree / r_last).map_err(|_| CleaveError::Weights(WeightError::Overflow))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Cleave { step: Box<CleaveStep>, child: Box<TreeNode> },
    FermatLeaf { exponent: u32 },
    Tensor { children: Vec<TreeNode> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    /// The polynomial this node decomposes, on its own local variables.
    pub polynomial: ExponentMatrix,
    pub kind: NodeKind,
    /// Length of the exceptional collection below this node.
    pub total: BigInt,
}

impl TreeNode {
    fn leaf(r: u32) -> Self {
        Self {
            polynomial: ExponentMatrix::fermat_sum(&[r]).expect("r >= 2"),
            kind: NodeKind::FermatLeaf { exponent: r },
            total: BigInt::from(r) - 1,
        }
    }

    /// Cleave steps in pre-order.
    pub fn steps(&self) -> Vec<&CleaveStep> {
        let mut out = Vec::new();
        self.collect_steps(&mut out);
        out
    }

    fn collect_steps<'a>(&'a self, out: &mut Vec<&'a CleaveStep>) {
        match &self.kind {
            NodeKind::Cleave { step, child } => {
                out.push(step);
                child.collect_steps(out);
            }
            NodeKind::FermatLeaf { .. } => {}
            NodeKind::Tensor { children } => children.iter().for_each(|c| c.collect_steps(out)),
        }
    }

    /// Recomputes the total from the children.
    pub fn recount(&self) -> BigInt {
        match &self.kind {
            NodeKind::Cleave { step, child } => &step.t + child.recount(),
            NodeKind::FermatLeaf { exponent } => BigInt::from(*exponent) - 1,
            NodeKind::Tensor { children } => children.iter().map(TreeNode::recount).product(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub root: ExponentMatrix,
    pub strategy: BStrategy,
    pub node: TreeNode,
    pub total_exceptionals: BigInt,
}

/// Cleaves every atom down to Fermat leaves and counts exceptional objects.
///
/// The count is checked against `mu(w^T)`.
pub fn decompose(m: &ExponentMatrix, strategy: BStrategy) -> Result<DecompositionTree, CleaveError> {
    let c = classify(m)?;
    let node = decompose_classification(&c, m, strategy)?;
    let mu = milnor_of_transpose(m)?;
    if node.total != mu {
        return Err(CleaveError::LengthMismatch { total: node.total, mu });
    }
    Ok(DecompositionTree { root: m.clone(), strategy, total_exceptionals: node.total.clone(), node })
}

fn decompose_classification(
    c: &Classification,
    m: &ExponentMatrix,
    strategy: BStrategy,
) -> Result<TreeNode, CleaveError> {
    if let [atom] = c.atoms.as_slice() {
        return decompose_atom(atom, strategy);
    }
    let children = c.atoms.iter().map(|a| decompose_atom(a, strategy)).collect::<Result<Vec<_>, _>>()?;
    let total = children.iter().map(|ch| ch.total.clone()).product();
    Ok(TreeNode { polynomial: m.clone(), kind: NodeKind::Tensor { children }, total })
}

fn decompose_atom(atom: &Atom, strategy: BStrategy) -> Result<TreeNode, CleaveError> {
    let atom = Atom::local(atom.kind, atom.exponents.clone()).expect("valid atom").normalized();
    if atom.kind == AtomKind::Fermat {
        return Ok(TreeNode::leaf(atom.exponents[0]));
    }
    let b = strategy.choose(&atom)?;
    let step = cleave_step(&atom, b)?;
    if step.case == CleaveCase::A {
        return Err(CleaveError::CaseA { atom, b, sum_d: step.vgit.sum_d });
    }
    let child = decompose_classification(&step.w_minus, &step.minus_matrix, strategy)?;
    let total = &step.t + &child.total;
    Ok(TreeNode {
        polynomial: atom.local_matrix(),
        kind: NodeKind::Cleave { step: Box::new(step), child: Box::new(child) },
        total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinReport {
    /// `r_i | d^T` for every `i`.
    pub gorenstein: bool,
    /// `(r, d^T)`, indexed by the input's monomials.
    pub transpose_weights: WeightSystem,
    /// Every step has `sum d = 0`.
    pub steps: Vec<CleaveStep>,
    /// Fermat exponent reached by each input monomial; empty unless Gorenstein.
    pub terminal: Vec<u32>,
    pub tilting: bool,
}

/// Cleaves with `b = d^T / r_n` until only Fermat monomials remain.
///
/// Atoms are reduced independently. Each intermediate atom's transpose
/// weights are recomputed and must again divide its degree.
pub fn gorenstein_reduce(m: &ExponentMatrix) -> Result<GorensteinReport, CleaveError> {
    let c = classify(m)?;
    let transpose_weights =
        weight_system(&m.transpose().expect("classified matrices are square")).map_err(CleaveError::Weights)?;
    let Some(expected) = transpose_weights.divisor_ratios() else {
        return Ok(GorensteinReport {
            gorenstein: false,
            transpose_weights,
            steps: Vec::new(),
            terminal: Vec::new(),
            tilting: false,
        });
    };

    let mut terminal = vec![0u32; m.rows()];
    let mut steps = Vec::new();
    for (atom, rows) in c.atoms.iter().zip(&c.atom_rows) {
        let atom = Atom::local(atom.kind, atom.exponents.clone()).expect("valid atom").normalized();
        reduce_atom(atom, rows.clone(), &mut steps, &mut terminal)?;
    }
    if terminal.iter().zip(&expected).any(|(&t, &e)| u64::from(t) != e) {
        return Err(CleaveError::TerminalMismatch { terminal, expected });
    }
    let mu_terminal: BigInt = terminal.iter().map(|&e| BigInt::from(e) - 1).product();
    let mu = milnor_closed(&c, true)?;
    if mu_terminal != mu {
        return Err(CleaveError::LengthMismatch { total: mu_terminal, mu });
    }
    Ok(GorensteinReport { gorenstein: true, transpose_weights, steps, terminal, tilting: true })
}

fn reduce_atom(
    atom: Atom,
    rows: Vec<usize>,
    steps: &mut Vec<CleaveStep>,
    terminal: &mut [u32],
) -> Result<(), CleaveError> {
    if atom.kind == AtomKind::Fermat {
        terminal[rows[0]] = atom.exponents[0];
        return Ok(());
    }
    let b = gorenstein_b(&atom)?;
    let step = cleave_step(&atom, b)?;
    if !step.vgit.sum_d.is_zero() {
        return Err(CleaveError::NonzeroSumD { atom, b, sum_d: step.vgit.sum_d });
    }
    let next: Vec<(Atom, Vec<usize>)> = step
        .w_minus
        .atoms
        .iter()
        .zip(&step.w_minus.atom_rows)
        .map(|(a, local_rows)| {
            let sub = Atom::local(a.kind, a.exponents.clone()).expect("valid atom").normalized();
            (sub, local_rows.iter().map(|&r| rows[r]).collect())
        })
        .collect();
    steps.push(step);
    for (sub, sub_rows) in next {
        reduce_atom(sub, sub_rows, steps, terminal)?;
    }
    Ok(())
}

impl GorensteinReport {
    pub fn terminal_polynomial(&self) -> Option<ExponentMatrix> {
        (!self.terminal.is_empty()).then(|| ExponentMatrix::fermat_sum(&self.terminal).expect("exponents >= 2"))
    }
}

impl DecompositionTree {
    pub fn is_consistent(&self) -> bool {
        self.node.recount() == self.total_exceptionals && self.total_exceptionals >= BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> ExponentMatrix {
        ExponentMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn atom(kind: AtomKind, exps: &[u32]) -> Atom {
        Atom::local(kind, exps.to_vec()).unwrap()
    }

    #[test]
    fn augment_examples() {
        assert_eq!(augment(&atom(AtomKind::Loop, &[2, 2]), 2).unwrap(), m(&[&[2, 1, 0], &[1, 2, 2]]));
        assert_eq!(augment(&atom(AtomKind::Chain, &[2, 2]), 2).unwrap(), m(&[&[2, 1, 0], &[0, 2, 2]]));
        assert_eq!(augment(&atom(AtomKind::Chain, &[3]), 4).unwrap(), m(&[&[3, 4]]));
        assert_eq!(augment(&atom(AtomKind::Fermat, &[3]), 4), Err(CleaveError::FermatNotAugmentable));
        assert_eq!(augment(&atom(AtomKind::Chain, &[3, 2]), 1), Err(CleaveError::BadB(1)));
    }

    #[test]
    fn loop_step() {
        let s = cleave_step(&atom(AtomKind::Loop, &[2, 2]), 2).unwrap();
        assert_eq!(s.w_minus.atoms, vec![Atom::new(AtomKind::Chain, vec![2, 2], vec![1, 0]).unwrap()]);
        assert_eq!(s.minus_variables(), vec![0, 2]);
        assert_eq!((s.vgit.sum_d.clone(), s.t.clone(), s.case), (1.into(), 1.into(), CleaveCase::C));
        assert_eq!((s.mu_plus.clone(), s.mu_minus.clone()), (4.into(), 3.into()));
    }

    #[test]
    fn chain_steps() {
        let s = cleave_step(&atom(AtomKind::Chain, &[2, 2]), 2).unwrap();
        let kinds: Vec<_> = s.w_minus.atoms.iter().map(|a| (a.kind, a.exponents.clone())).collect();
        assert_eq!(kinds, vec![(AtomKind::Fermat, vec![2]), (AtomKind::Fermat, vec![2])]);
        assert_eq!((s.vgit.sum_d.clone(), s.t.clone(), s.case), (2.into(), 2.into(), CleaveCase::C));
        assert_eq!((s.mu_plus.clone(), s.mu_minus.clone()), (3.into(), 1.into()));

        let s = cleave_step(&atom(AtomKind::Chain, &[2, 2]), 4).unwrap();
        let kinds: Vec<_> = s.w_minus.atoms.iter().map(|a| (a.kind, a.exponents.clone())).collect();
        assert_eq!(kinds, vec![(AtomKind::Fermat, vec![2]), (AtomKind::Fermat, vec![4])]);
        assert_eq!((s.vgit.sum_d.clone(), s.t.clone(), s.case), (0.into(), 0.into(), CleaveCase::B));
        assert_eq!((s.mu_plus.clone(), s.mu_minus.clone()), (3.into(), 3.into()));
    }

    #[test]
    fn case_a_needs_large_b() {
        let s = cleave_step(&atom(AtomKind::Chain, &[2, 2]), 6).unwrap();
        assert_eq!(s.case, CleaveCase::A);
        assert_eq!(s.t, 2.into());
        assert!(matches!(decompose(&m(&[&[2, 1], &[0, 2]]), BStrategy::Fixed(6)), Err(CleaveError::CaseA { .. })));
    }

    #[test]
    fn decompose_examples() {
        let tree = decompose(&m(&[&[2, 1], &[1, 2]]), BStrategy::Min).unwrap();
        assert_eq!(tree.total_exceptionals, 4.into());
        let ts: Vec<BigInt> = tree.node.steps().iter().map(|s| s.t.clone()).collect();
        assert_eq!(ts, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(tree.is_consistent());

        let tree = decompose(&m(&[&[2, 1], &[0, 2]]), BStrategy::Min).unwrap();
        assert_eq!(tree.total_exceptionals, 3.into());

        let tree = decompose(&m(&[&[5]]), BStrategy::Min).unwrap();
        assert_eq!(tree.total_exceptionals, 4.into());
        assert_eq!(tree.node.kind, NodeKind::FermatLeaf { exponent: 5 });

        let tree = decompose(&m(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]), BStrategy::Max).unwrap();
        assert_eq!(tree.total_exceptionals, 3.into());
        assert!(matches!(tree.node.kind, NodeKind::Tensor { .. }));
    }

    #[test]
    fn gorenstein_examples() {
        let r = gorenstein_reduce(&m(&[&[2, 1], &[1, 2]])).unwrap();
        assert!(r.gorenstein && r.tilting);
        assert_eq!(r.transpose_weights, WeightSystem { weights: vec![1, 1], degree: 3 });
        assert_eq!(r.steps.iter().map(|s| s.b).collect::<Vec<_>>(), vec![3, 3]);
        assert_eq!(r.steps[0].vgit.d, vec![BigInt::from(3), BigInt::from(-6), BigInt::from(3)]);
        assert_eq!(r.steps[1].atom, atom(AtomKind::Chain, &[3, 2]));
        assert_eq!(r.terminal, vec![3, 3]);

        let r = gorenstein_reduce(&m(&[&[2, 1], &[0, 2]])).unwrap();
        assert!(r.tilting);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].b, 4);
        assert_eq!(r.terminal, vec![2, 4]);
        assert_eq!(r.terminal_polynomial().unwrap(), m(&[&[2, 0], &[0, 4]]));

        let r = gorenstein_reduce(&m(&[&[2, 1], &[1, 3]])).unwrap();
        assert!(!r.gorenstein && !r.tilting);
        assert_eq!(r.transpose_weights, WeightSystem { weights: vec![2, 1], degree: 5 });
        assert!(r.steps.is_empty());
    }

    #[test]
    fn gorenstein_strategy_requires_divisibility() {
        assert!(matches!(
            decompose(&m(&[&[2, 1], &[1, 3]]), BStrategy::Gorenstein),
            Err(CleaveError::NotGorenstein { .. })
        ));
        let tree = decompose(&m(&[&[2, 1], &[1, 2]]), BStrategy::Gorenstein).unwrap();
        assert_eq!(tree.total_exceptionals, 4.into());
        assert!(tree.node.steps().iter().all(|s| s.case == CleaveCase::B));
    }
}
