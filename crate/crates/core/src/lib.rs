//! Decompose 2^n × 2^n complex matrices into weighted sums of Pauli strings.
//!
//! The coefficient of a Pauli string P in a matrix A is `(1/2^n)·Tr(P·A)`.
//! Instead of evaluating each of the 4^n traces independently, the decomposer
//! walks the quaternary tree of Pauli strings depth-first, updating a single
//! sparse form incrementally between siblings so that shared structure is
//! computed once. Structure-aware walks prune entire subtrees for diagonal,
//! anti-diagonal, tridiagonal and banded matrices; a forest executor splits
//! one walk into independent subtree tasks for multi-threaded runs with
//! bit-identical results; a small algebra combines decompositions without
//! touching matrix entries; and a circuit builder turns a decomposition into
//! a verified linear-combination-of-unitaries block encoding.

pub mod algebra;
pub mod compose;
pub mod decompose;
pub mod decomposition;
pub mod encoding;
mod error;
pub mod matrix;
pub mod parallel;
pub mod pauli;
pub mod source;
pub mod tree;

pub use algebra::{block_diagonal, direct_sum, hermitian_augment, linear_combination, product};
pub use compose::{compose, SparsePauliOperator, MAX_DENSE_QUBITS, MAX_OPERATOR_QUBITS};
pub use decompose::{
    allowed_support, decompose_general, decompose_naive, decompose_streaming,
    decompose_structured, decompose_with_report, predicted_op_count, SupportPredicate, WalkReport,
    DEFAULT_PRUNE_TOLERANCE, MAX_NAIVE_QUBITS,
};
pub use decomposition::Decomposition;
pub use encoding::{
    build_lcu_circuit, prep_unitary, simulate, verify_block_encoding, BlockEncodingReport,
    Circuit, Gate, MAX_SIMULATION_QUBITS, REAL_COEFF_TOLERANCE,
};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use parallel::{
    decompose_forest, decompose_parallel, seed_subtree, ForestPlan, MAX_CUT_LEVEL,
};
pub use pauli::{letter_product, PauliLetter, PauliString, Phase, LETTERS};
pub use source::{
    matches_structure, BandSource, DenseSource, DiagonalSource, FnSource, MatrixSource,
    StructureClass,
};
pub use tree::{leaf_coefficient, TreeState};
