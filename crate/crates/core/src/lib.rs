//! Combinatorics of exceptional collections for invertible polynomials.
//!
//! An invertible polynomial is stored as its exponent matrix ([`ExponentMatrix`]).
//! This crate classifies such matrices into Fermat, chain and loop atoms,
//! computes weight systems and Milnor numbers (closed forms and a graded
//! Jacobian-ring oracle), describes the maximal diagonal symmetry group, and
//! runs the variation-of-GIT cleave steps that peel exceptional objects off
//! loops and chains until only Fermat summands remain.
//!
//! Everything is exact: integers are arbitrary precision wherever a product of
//! exponents can appear. The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod cleave;
pub mod intlin;
pub mod matrix;
pub mod milnor;
pub mod parse;
pub mod symmetry;
pub mod weights;

pub use classify::{classify, Atom, AtomError, AtomKind, Classification, ClassifyError, NotInvertible};
pub use cleave::{
    augment, cleave_step, decompose, gorenstein_reduce, BStrategy, CleaveCase, CleaveError, CleaveStep,
    DecompositionTree, GorensteinReport, NodeKind, TreeNode,
};
pub use intlin::{
    cokernel_structure, det_exact, gcd_all, inverse_rational, maximal_minor_vector, primitive_kernel,
    smith_normal_form, CokernelStructure, IntMatrix, LinAlgError, RationalMatrix, SnfResult,
};
pub use matrix::{ExponentMatrix, MatrixError};
pub use milnor::{
    atom_milnor, chain_transpose_formula, loop_transpose_formula, milnor_brute, milnor_closed, milnor_of_transpose,
    JacobianRing, MilnorError, MilnorLimits, MilnorMethod, MilnorReport,
};
pub use parse::{format_polynomial, parse_polynomial, ParseError, ParseErrorKind, ParseWarning, ParsedPolynomial};
pub use symmetry::{
    chain_minor_closed_form, cokernel_torsion_order, exceptional_block_count, gamma_structure, loop_minor_closed_form,
    recognize_augmentation, vgit_lambda, BlockCount, GroupStructure, SymmetryError, VgitData,
};
pub use weights::{weight_system, WeightError, WeightSystem};
