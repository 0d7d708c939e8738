//! Mutable state of one decomposition tree walk.
//!
//! A root-to-leaf path through the quaternary tree of Pauli strings assigns
//! one letter per level, level 0 first. [`TreeState`] incrementally maintains
//! the sparse form of the partial string: after `depth` letters the first
//! `2^depth` entries of the column and sign arrays describe `compose` of the
//! prefix. Moving between sibling letters at a level rewrites only that
//! level's segment `[2^l, 2^(l+1))`, which is what makes the walk cheaper
//! than recomposing every string from scratch.
//!
//! Representation note: the raw column array is kept *relative* to a running
//! offset — the sum of `2^l` over levels whose letter is antidiagonal (X or
//! Y). Keeping the offset out of the array is what lets a sibling change at
//! level `l` touch `2^l` elements instead of `2^(l+1)`: the entries below the
//! segment would otherwise all need their bit `l` updated. [`TreeState::column`]
//! adds the offset back, so observed columns always match [`compose`].

use num_complex::Complex64;

use crate::compose::MAX_OPERATOR_QUBITS;
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, Phase};
use crate::source::MatrixSource;

/// State of one tree walk over n-letter Pauli strings.
#[derive(Debug, Clone)]
pub struct TreeState {
    n: usize,
    /// Column array relative to `column_offset`; `k[0]` stays 0.
    k: Vec<u64>,
    /// Row signs (±1).
    m: Vec<i8>,
    /// Letters Y on the current path.
    n_y: u32,
    /// Sum of `2^l` over antidiagonal levels of the current path.
    column_offset: u64,
    /// Array element writes performed so far (starts at 2 for the two heads).
    op_count: u64,
    /// Levels assigned so far.
    depth: usize,
}

impl TreeState {
    /// Fresh state for an n-qubit walk; allocates the two length-2^n arrays.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubitMatrix);
        }
        if n > MAX_OPERATOR_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: MAX_OPERATOR_QUBITS,
            });
        }
        let size = 1usize << n;
        let mut m = vec![0i8; size];
        m[0] = 1;
        Ok(TreeState {
            n,
            k: vec![0u64; size],
            m,
            n_y: 0,
            column_offset: 0,
            op_count: 2,
            depth: 0,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    /// Number of levels the current prefix covers.
    pub fn prefix_len(&self) -> usize {
        self.depth
    }

    /// Array element writes performed, including 2 for initialization.
    pub fn op_count(&self) -> u64 {
        self.op_count
    }

    pub fn y_count(&self) -> u32 {
        self.n_y
    }

    /// Global phase of the prefix: `(-i)^(y_count mod 4)`.
    pub fn phase(&self) -> Phase {
        Phase::minus_i_power(i64::from(self.n_y))
    }

    /// True column of row `j`; defined for `j < 2^prefix_len`.
    pub fn column(&self, j: usize) -> u64 {
        debug_assert!(j < 1usize << self.depth);
        self.k[j].wrapping_add(self.column_offset)
    }

    /// Sign of row `j`; defined for `j < 2^prefix_len`.
    pub fn sign(&self, j: usize) -> i8 {
        debug_assert!(j < 1usize << self.depth);
        self.m[j]
    }

    /// True columns of the filled prefix, materialized.
    pub fn columns_prefix(&self) -> Vec<u64> {
        (0..1usize << self.depth).map(|j| self.column(j)).collect()
    }

    /// Signs of the filled prefix.
    pub fn signs_prefix(&self) -> &[i8] {
        &self.m[..1usize << self.depth]
    }

    /// Assign `letter` to the next level, extending the filled prefix.
    ///
    /// Performs the same element writes the walk performs when it first
    /// reaches that child (the sibling chain I → X → Y → Z stops at
    /// `letter`), so states built this way are bit-identical to mid-walk
    /// states. Panics when the prefix is already complete.
    pub fn apply_letter(&mut self, letter: PauliLetter) {
        assert!(
            self.depth < self.n,
            "prefix already covers all {} levels",
            self.n
        );
        let l = self.depth;
        self.enter_i(l);
        match letter {
            PauliLetter::I => {}
            PauliLetter::X => self.i_to_x(l),
            PauliLetter::Y => {
                self.i_to_x(l);
                self.x_to_y(l);
            }
            PauliLetter::Z => {
                self.i_to_x(l);
                self.x_to_y(l);
                self.y_to_z(l);
            }
        }
        self.depth += 1;
    }

    /// Fill segment `[2^l, 2^(l+1))` for letter I: columns get `+2^l`, signs
    /// copy. Costs `2·2^l` element writes.
    pub(crate) fn enter_i(&mut self, l: usize) {
        let half = 1usize << l;
        let offset = 1u64 << l;
        let (head, tail) = self.k.split_at_mut(half);
        for (t, h) in tail[..half].iter_mut().zip(head.iter()) {
            *t = h.wrapping_add(offset);
        }
        let (head, tail) = self.m.split_at_mut(half);
        tail[..half].copy_from_slice(head);
        self.op_count += 2 * half as u64;
    }

    /// Sibling step I → X: shift the segment's columns down by `2^(l+1)` and
    /// absorb the level's antidiagonal bit into the running offset. `2^l`
    /// element writes.
    pub(crate) fn i_to_x(&mut self, l: usize) {
        let half = 1usize << l;
        let offset = 1u64 << l;
        for v in &mut self.k[half..2 * half] {
            *v = v.wrapping_sub(2 * offset);
        }
        self.column_offset = self.column_offset.wrapping_add(offset);
        self.op_count += half as u64;
    }

    /// Sibling step X → Y: negate the segment's signs. `2^l` element writes.
    pub(crate) fn x_to_y(&mut self, l: usize) {
        let half = 1usize << l;
        for v in &mut self.m[half..2 * half] {
            *v = -*v;
        }
        self.n_y += 1;
        self.op_count += half as u64;
    }

    /// Sibling step Y → Z: shift the segment's columns back up by `2^(l+1)`
    /// and release the antidiagonal bit. `2^l` element writes.
    pub(crate) fn y_to_z(&mut self, l: usize) {
        let half = 1usize << l;
        let offset = 1u64 << l;
        for v in &mut self.k[half..2 * half] {
            *v = v.wrapping_add(2 * offset);
        }
        self.column_offset = self.column_offset.wrapping_sub(offset);
        self.n_y -= 1;
        self.op_count += half as u64;
    }

    /// Direct sibling step I → Z for walks that skip X and Y: columns are
    /// already correct, only the segment's signs flip. `2^l` element writes.
    pub(crate) fn i_to_z(&mut self, l: usize) {
        let half = 1usize << l;
        for v in &mut self.m[half..2 * half] {
            *v = -*v;
        }
        self.op_count += half as u64;
    }

    pub(crate) fn raw_columns(&self) -> &[u64] {
        &self.k
    }

    pub(crate) fn raw_signs(&self) -> &[i8] {
        &self.m
    }

    pub(crate) fn offset(&self) -> u64 {
        self.column_offset
    }
}

/// Coefficient of the Pauli string spelled by a completed path:
/// `(1/2^n)·(-i)^(y_count mod 4)·Σ_j m[j]·A[column(j), j]`, summed in
/// ascending row order for reproducibility.
pub fn leaf_coefficient<S: MatrixSource + ?Sized>(state: &TreeState, src: &S) -> Complex64 {
    assert_eq!(
        state.prefix_len(),
        state.qubit_count(),
        "leaf coefficient needs a fully assigned path"
    );
    assert_eq!(src.qubit_count(), state.qubit_count());
    coefficient_from_parts(
        state.qubit_count(),
        state.raw_columns(),
        state.raw_signs(),
        state.offset(),
        state.y_count(),
        src,
    )
}

pub(crate) fn coefficient_from_parts<S: MatrixSource + ?Sized>(
    n: usize,
    k: &[u64],
    m: &[i8],
    column_offset: u64,
    n_y: u32,
    src: &S,
) -> Complex64 {
    let dim = 1usize << n;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        let row = k[j].wrapping_add(column_offset);
        let a = src.entry(row, j as u64);
        if m[j] >= 0 {
            sum += a;
        } else {
            sum -= a;
        }
    }
    // 2^-n is a power of two, so the scaling is exact.
    let scale = 1.0 / dim as f64;
    let rotated = Phase::minus_i_power(i64::from(n_y)).apply(sum);
    Complex64::new(rotated.re * scale, rotated.im * scale)
}
