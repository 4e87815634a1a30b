//! Kreuzer–Skarke classification of invertible exponent matrices.
//!
//! Every row of an invertible matrix is either a pure power `x_i^a` or
//! `x_i^a * x_j` with `a >= 2`. Drawing an edge `i -> j` for each of the latter
//! gives a graph whose components are isolated nodes (Fermat), paths ending in
//! a pure power (chain) and cycles (loop).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::intlin::{det_exact, IntMatrix};
use crate::matrix::ExponentMatrix;
use crate::weights::{weight_system, WeightError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Fermat,
    Chain,
    Loop,
}

impl AtomKind {
    pub fn name(self) -> &'static str {
        match self {
            AtomKind::Fermat => "fermat",
            AtomKind::Chain => "chain",
            AtomKind::Loop => "loop",
        }
    }
}

impl fmt::Display for AtomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomKind::Fermat => "Fermat",
            AtomKind::Chain => "Chain",
            AtomKind::Loop => "Loop",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtomError {
    #[error("atom exponents must all be >= 2")]
    ExponentBelowTwo,
    #[error("{kind} atom cannot have {len} exponents")]
    BadLength { kind: AtomKind, len: usize },
    #[error("atom has {exponents} exponents but {variables} variables")]
    VariableMismatch { exponents: usize, variables: usize },
}

/// One indecomposable summand.
///
/// Position `i` owns monomial `x_{v_i}^{a_i} * x_{v_{i+1}}` (chain: the last
/// monomial is the pure power `x_{v_n}^{a_n}`; loop: the last monomial wraps to
/// `x_{v_1}`). Variables are 0-based indices into the ambient polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub kind: AtomKind,
    pub exponents: Vec<u32>,
    pub variables: Vec<usize>,
}

impl Atom {
    pub fn new(kind: AtomKind, exponents: Vec<u32>, variables: Vec<usize>) -> Result<Self, AtomError> {
        let len = exponents.len();
        let len_ok = match kind {
            AtomKind::Fermat => len == 1,
            AtomKind::Chain => len >= 1,
            AtomKind::Loop => len >= 2,
        };
        if !len_ok {
            return Err(AtomError::BadLength { kind, len });
        }
        if variables.len() != len {
            return Err(AtomError::VariableMismatch { exponents: len, variables: variables.len() });
        }
        if exponents.iter().any(|&a| a < 2) {
            return Err(AtomError::ExponentBelowTwo);
        }
        Ok(Self { kind, exponents, variables })
    }

    /// Atom on variables `0..n`.
    pub fn local(kind: AtomKind, exponents: Vec<u32>) -> Result<Self, AtomError> {
        let vars = (0..exponents.len()).collect();
        Self::new(kind, exponents, vars)
    }

    pub fn fermat(r: u32) -> Result<Self, AtomError> {
        Self::local(AtomKind::Fermat, vec![r])
    }

    pub fn chain(exponents: Vec<u32>) -> Result<Self, AtomError> {
        Self::local(AtomKind::Chain, exponents)
    }

    pub fn loop_(exponents: Vec<u32>) -> Result<Self, AtomError> {
        Self::local(AtomKind::Loop, exponents)
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Single-variable chains are Fermat monomials; everything else is unchanged.
    pub fn normalized(mut self) -> Self {
        if self.kind == AtomKind::Chain && self.len() == 1 {
            self.kind = AtomKind::Fermat;
        }
        self
    }

    /// Exponent matrix on the atom's own variables, in atom order.
    pub fn local_matrix(&self) -> ExponentMatrix {
        let n = self.len();
        let mut entries = vec![0; n * n];
        for (i, &a) in self.exponents.iter().enumerate() {
            entries[i * n + i] = a;
            let aux = match self.kind {
                AtomKind::Fermat => None,
                AtomKind::Chain => (i + 1 < n).then_some(i + 1),
                AtomKind::Loop => Some((i + 1) % n),
            };
            if let Some(j) = aux {
                entries[i * n + j] = 1;
            }
        }
        ExponentMatrix::from_flat(n, n, entries).expect("atoms have nonzero rows and columns")
    }

    /// Berglund–Hübsch transpose on the same variables.
    ///
    /// Chains reverse; loops reverse direction (same exponent cycle read
    /// backwards), then rotate back to canonical position.
    pub fn transpose(&self) -> Self {
        match self.kind {
            AtomKind::Fermat => self.clone(),
            AtomKind::Chain => {
                let mut t = self.clone();
                t.exponents.reverse();
                t.variables.reverse();
                t
            }
            AtomKind::Loop => {
                let n = self.len();
                let order = core::iter::once(0).chain((1..n).rev());
                let (exponents, variables) = order.map(|i| (self.exponents[i], self.variables[i])).unzip();
                Self { kind: AtomKind::Loop, exponents, variables }.canonical()
            }
        }
    }

    /// Loops rotate to start at their smallest variable index.
    pub fn canonical(mut self) -> Self {
        if self.kind == AtomKind::Loop {
            let start = (0..self.len()).min_by_key(|&i| self.variables[i]).unwrap_or(0);
            self.exponents.rotate_left(start);
            self.variables.rotate_left(start);
        }
        self
    }

    fn min_variable(&self) -> usize {
        self.variables.iter().copied().min().unwrap_or(usize::MAX)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("; ")?;
        for (i, v) in self.variables.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        f.write_str(")")
    }
}

/// Why a matrix is not an invertible polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotInvertible {
    NonSquare {
        rows: usize,
        cols: usize,
    },
    SingularMatrix,
    /// A row with three or more variables, two large exponents, or a
    /// variable graph that is not a union of paths and cycles.
    BadRowShape {
        row: usize,
    },
    NoPositiveWeights,
    ExponentBelowTwo {
        row: usize,
    },
}

impl NotInvertible {
    pub fn code(&self) -> &'static str {
        match self {
            NotInvertible::NonSquare { .. } => "NonSquare",
            NotInvertible::SingularMatrix => "SingularMatrix",
            NotInvertible::BadRowShape { .. } => "BadRowShape",
            NotInvertible::NoPositiveWeights => "NoPositiveWeights",
            NotInvertible::ExponentBelowTwo { .. } => "ExponentBelowTwo",
        }
    }
}

impl fmt::Display for NotInvertible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotInvertible::NonSquare { rows, cols } => write!(f, "{rows} monomials in {cols} variables"),
            NotInvertible::SingularMatrix => f.write_str("exponent matrix is singular"),
            NotInvertible::BadRowShape { row } => {
                write!(f, "monomial {} does not fit a Fermat/chain/loop pattern", row + 1)
            }
            NotInvertible::NoPositiveWeights => f.write_str("no positive weight system"),
            NotInvertible::ExponentBelowTwo { row } => write!(f, "monomial {} has a main exponent below 2", row + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not invertible ({code}): {inner}", code = .0.code(), inner = .0)]
    NotInvertible(NotInvertible),
}

impl ClassifyError {
    pub fn reason(&self) -> &NotInvertible {
        match self {
            ClassifyError::NotInvertible(r) => r,
        }
    }
}

impl From<NotInvertible> for ClassifyError {
    fn from(r: NotInvertible) -> Self {
        ClassifyError::NotInvertible(r)
    }
}

/// Atom decomposition of an invertible polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classification {
    /// Ordered by smallest variable index.
    pub atoms: Vec<Atom>,
    /// `atom_rows[a][i]` is the input row realizing position `i` of atom `a`.
    pub atom_rows: Vec<Vec<usize>>,
    num_vars: usize,
}

impl Classification {
    /// Thom–Sebastiani sum of atoms on fresh consecutive variables. Input
    /// variables are ignored; rows are numbered in the same order.
    pub fn disjoint(atoms: &[Atom]) -> Self {
        let mut next = 0;
        let mut out = Vec::with_capacity(atoms.len());
        let mut rows = Vec::with_capacity(atoms.len());
        for atom in atoms {
            let n = atom.len();
            let vars: Vec<usize> = (next..next + n).collect();
            rows.push(vars.clone());
            out.push(Atom { kind: atom.kind, exponents: atom.exponents.clone(), variables: vars }.normalized());
            next += n;
        }
        Self { atoms: out, atom_rows: rows, num_vars: next }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `(atom, position)` owning variable `var`.
    pub fn position_of(&self, var: usize) -> Option<(usize, usize)> {
        self.atoms
            .iter()
            .enumerate()
            .find_map(|(a, atom)| atom.variables.iter().position(|&v| v == var).map(|p| (a, p)))
    }

    /// Rebuilds the exponent matrix: original variable columns, rows in atom order.
    pub fn assemble(&self) -> ExponentMatrix {
        let n = self.num_vars;
        let mut entries = vec![0; n * n];
        let mut r = 0;
        for atom in &self.atoms {
            let local = atom.local_matrix();
            for i in 0..atom.len() {
                for (j, &v) in atom.variables.iter().enumerate() {
                    entries[r * n + v] = local.get(i, j);
                }
                r += 1;
            }
        }
        ExponentMatrix::from_flat(n, n, entries).expect("atoms cover every variable")
    }

    /// Checks the structural invariants: atoms valid and partitioning the variables.
    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.num_vars];
        for atom in &self.atoms {
            if Atom::new(atom.kind, atom.exponents.clone(), atom.variables.clone()).is_err() {
                return false;
            }
            for &v in &atom.variables {
                if v >= self.num_vars || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.iter().all(|&s| s) && self.atom_rows.len() == self.atoms.len()
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// Decomposes a square exponent matrix into Fermat, chain and loop atoms.
pub fn classify(m: &ExponentMatrix) -> Result<Classification, ClassifyError> {
    if !m.is_square() {
        return Err(NotInvertible::NonSquare { rows: m.rows(), cols: m.cols() }.into());
    }
    let n = m.rows();

    // main[row] = variable carrying the big exponent, aux[row] = exponent-1 partner
    let mut main = vec![0; n];
    let mut aux: Vec<Option<usize>> = vec![None; n];
    for row in 0..n {
        let support: Vec<(usize, u32)> = m.row(row).iter().copied().enumerate().filter(|&(_, a)| a > 0).collect();
        match support.as_slice() {
            [(j, a)] => {
                if *a < 2 {
                    return Err(NotInvertible::ExponentBelowTwo { row }.into());
                }
                main[row] = *j;
            }
            [(j1, a1), (j2, a2)] => match (*a1, *a2) {
                (1, 1) => return Err(NotInvertible::ExponentBelowTwo { row }.into()),
                (1, _) => {
                    main[row] = *j2;
                    aux[row] = Some(*j1);
                }
                (_, 1) => {
                    main[row] = *j1;
                    aux[row] = Some(*j2);
                }
                _ => return Err(NotInvertible::BadRowShape { row }.into()),
            },
            _ => return Err(NotInvertible::BadRowShape { row }.into()),
        }
    }

    let mut row_of = vec![usize::MAX; n];
    for row in 0..n {
        if row_of[main[row]] != usize::MAX {
            return Err(NotInvertible::BadRowShape { row }.into());
        }
        row_of[main[row]] = row;
    }
    let mut indegree = vec![0u32; n];
    for (row, &a) in aux.iter().enumerate() {
        if let Some(j) = a {
            indegree[j] += 1;
            if indegree[j] > 1 {
                return Err(NotInvertible::BadRowShape { row }.into());
            }
        }
    }
    let next = |v: usize| aux[row_of[v]];

    let mut visited = vec![false; n];
    let mut atoms = Vec::new();
    let mut atom_rows: Vec<Vec<usize>> = Vec::new();
    let mut push = |kind: AtomKind, vars: Vec<usize>| {
        let exps = vars.iter().map(|&v| m.get(row_of[v], v)).collect();
        let rows: Vec<usize> = vars.iter().map(|&v| row_of[v]).collect();
        atoms.push(Atom { kind, exponents: exps, variables: vars });
        atom_rows.push(rows);
    };
    for start in (0..n).filter(|&v| indegree[v] == 0) {
        let mut path = vec![start];
        visited[start] = true;
        let mut v = start;
        while let Some(w) = next(v) {
            visited[w] = true;
            path.push(w);
            v = w;
        }
        let kind = if path.len() == 1 { AtomKind::Fermat } else { AtomKind::Chain };
        push(kind, path);
    }
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut v = next(start).expect("nodes off every path lie on cycles");
        while v != start {
            visited[v] = true;
            cycle.push(v);
            v = next(v).expect("nodes off every path lie on cycles");
        }
        push(AtomKind::Loop, cycle);
    }

    let mut order: Vec<usize> = (0..atoms.len()).collect();
    order.sort_by_key(|&i| atoms[i].min_variable());
    let atoms: Vec<Atom> = order.iter().map(|&i| atoms[i].clone()).collect();
    let atom_rows = order.iter().map(|&i| atom_rows[i].clone()).collect();

    if det_exact(&IntMatrix::from(m)).expect("square").is_zero() {
        return Err(NotInvertible::SingularMatrix.into());
    }
    match weight_system(m) {
        Ok(_) => {}
        Err(WeightError::SingularMatrix) => return Err(NotInvertible::SingularMatrix.into()),
        Err(_) => return Err(NotInvertible::NoPositiveWeights.into()),
    }

    Ok(Classification { atoms, atom_rows, num_vars: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> ExponentMatrix {
        ExponentMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn atom(kind: AtomKind, exps: &[u32], vars: &[usize]) -> Atom {
        Atom::new(kind, exps.to_vec(), vars.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let c = classify(&m(&[&[3, 1], &[0, 2]])).unwrap();
        assert_eq!(c.atoms, vec![atom(AtomKind::Chain, &[3, 2], &[0, 1])]);
        let c = classify(&m(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(c.atoms, vec![atom(AtomKind::Loop, &[2, 2], &[0, 1])]);
        let c = classify(&m(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(c.atoms, vec![atom(AtomKind::Fermat, &[2], &[0]), atom(AtomKind::Fermat, &[2], &[1])]);
        let c = classify(&m(&[&[3, 1], &[1, 2]])).unwrap();
        assert_eq!(c.atoms, vec![atom(AtomKind::Loop, &[3, 2], &[0, 1])]);
    }

    #[test]
    fn permuted_input() {
        // x3^2 + x1*x3^4 ... written with rows shuffled: chain x2 -> x3 -> x1
        let w = m(&[&[4, 0, 0], &[0, 3, 1], &[1, 0, 2]]);
        let c = classify(&w).unwrap();
        assert_eq!(c.atoms, vec![atom(AtomKind::Chain, &[3, 2, 4], &[1, 2, 0])]);
        assert_eq!(c.atom_rows, vec![vec![1, 2, 0]]);
        assert_eq!(c.assemble().sorted_rows(), w.sorted_rows());
        assert_eq!(c.position_of(0), Some((0, 2)));
    }

    #[test]
    fn loops_rotate_to_smallest_variable() {
        // x2^3*x3 + x3^4*x1 + x1^2*x2
        let w = m(&[&[0, 3, 1], &[1, 0, 4], &[2, 1, 0]]);
        let c = classify(&w).unwrap();
        assert_eq!(c.atoms, vec![atom(AtomKind::Loop, &[2, 3, 4], &[0, 1, 2])]);
        assert_eq!(c.atom_rows, vec![vec![2, 0, 1]]);
    }

    #[test]
    fn rejections() {
        let reason = |rows: &[&[u32]]| classify(&m(rows)).unwrap_err().reason().clone();
        assert_eq!(
            classify(&m(&[&[2, 1, 0], &[1, 2, 2]])).unwrap_err().reason(),
            &NotInvertible::NonSquare { rows: 2, cols: 3 }
        );
        assert_eq!(reason(&[&[2, 1, 1], &[0, 2, 0], &[0, 0, 2]]), NotInvertible::BadRowShape { row: 0 });
        assert_eq!(reason(&[&[2, 2], &[0, 3]]), NotInvertible::BadRowShape { row: 0 });
        assert_eq!(reason(&[&[1, 1], &[0, 2]]), NotInvertible::ExponentBelowTwo { row: 0 });
        assert_eq!(reason(&[&[1, 0], &[0, 2]]), NotInvertible::ExponentBelowTwo { row: 0 });
        // two monomials sharing a main variable
        assert_eq!(reason(&[&[2, 1], &[3, 0]]), NotInvertible::BadRowShape { row: 1 });
        // x1^2*x3 + x2^2*x3 + x3^2: x3 is the partner twice
        assert_eq!(reason(&[&[2, 0, 1], &[0, 2, 1], &[0, 0, 2]]), NotInvertible::BadRowShape { row: 1 });
    }

    #[test]
    fn transpose_of_atoms() {
        let c = atom(AtomKind::Chain, &[3, 2, 5], &[0, 1, 2]);
        assert_eq!(c.transpose(), atom(AtomKind::Chain, &[5, 2, 3], &[2, 1, 0]));
        let l = atom(AtomKind::Loop, &[2, 3, 4], &[0, 1, 2]);
        assert_eq!(l.transpose(), atom(AtomKind::Loop, &[2, 4, 3], &[0, 2, 1]));
        for a in [c, l] {
            let t = a.transpose();
            let via_matrix =
                classify(&Classification::disjoint(std::slice::from_ref(&a)).assemble().transpose().unwrap()).unwrap();
            assert_eq!(via_matrix.atoms, vec![t.clone()]);
            assert_eq!(t.transpose(), a);
        }
    }

    #[test]
    fn disjoint_sum_reclassifies() {
        let atoms =
            [Atom::loop_(vec![2, 3]).unwrap(), Atom::chain(vec![4]).unwrap(), Atom::chain(vec![2, 5, 3]).unwrap()];
        let c = Classification::disjoint(&atoms);
        assert!(c.is_valid());
        assert_eq!(c.atoms[1].kind, AtomKind::Fermat);
        let again = classify(&c.assemble()).unwrap();
        assert_eq!(again.atoms, c.atoms);
    }
}
