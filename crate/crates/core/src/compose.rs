//! Sparse one-nonzero-per-row form of a Pauli string.
//!
//! Every n-letter Pauli string has exactly one nonzero entry per row, located
//! at a column given by XOR with a fixed mask and valued in {±1, ±i} with a
//! single global phase. [`compose`] builds that form in O(2^n) by doubling:
//! processing letters from level 0 upward, each level extends the column and
//! sign arrays from length 2^l to 2^(l+1) with one write per new element.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pauli::{PauliLetter, PauliString, Phase};

/// Largest string length `compose` accepts; the arrays take O(2^n) memory.
pub const MAX_OPERATOR_QUBITS: usize = 26;

/// Largest qubit count for which dense forms are materialized.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Sparse form of a Pauli string: row `j` holds value `phase · m[j]` at column
/// `k[j]`, where `phase = (-i)^(y_count mod 4)` is shared by every row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePauliOperator {
    n: usize,
    k: Vec<u64>,
    m: Vec<i8>,
    n_y: u32,
}

/// Build the sparse form of `s`.
///
/// `k[0]` starts as the bit pattern of antidiagonal letters (one bit per
/// level), then each level `l` doubles the filled prefix: the new column is
/// `k[j] ± 2^l` (minus for X and Y, which consume the seeded bit) and the new
/// sign is the old one scaled by the letter's extension sign.
pub fn compose(s: &PauliString) -> Result<SparsePauliOperator> {
    let n = s.qubit_count();
    if n > MAX_OPERATOR_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_OPERATOR_QUBITS,
        });
    }
    let size = 1usize << n;
    let mut k = vec![0u64; size];
    let mut m = vec![0i8; size];
    k[0] = s.x_mask();
    m[0] = 1;
    let mut n_y = 0u32;
    for l in 0..n {
        let letter = s.letter_at_level(l);
        if letter == PauliLetter::Y {
            n_y += 1;
        }
        let half = 1usize << l;
        let offset = 1u64 << l;
        let flip = letter.is_antidiagonal();
        let sign = letter.extension_sign();
        for j in 0..half {
            // When the letter is antidiagonal, bit l of k[j] is set (seeded
            // via k[0]), so the subtraction cannot underflow.
            k[half + j] = if flip { k[j] - offset } else { k[j] + offset };
            m[half + j] = sign * m[j];
        }
    }
    Ok(SparsePauliOperator { n, k, m, n_y })
}

impl SparsePauliOperator {
    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> u64 {
        1u64 << self.n
    }

    /// Number of letters Y in the underlying string.
    pub fn y_count(&self) -> u32 {
        self.n_y
    }

    /// The global phase `(-i)^(y_count mod 4)`.
    pub fn phase(&self) -> Phase {
        Phase::minus_i_power(self.n_y as i64)
    }

    /// Column indices, one per row.
    pub fn columns(&self) -> &[u64] {
        &self.k
    }

    /// Row signs (±1) relative to the global phase.
    pub fn signs(&self) -> &[i8] {
        &self.m
    }

    /// Column of the single nonzero in `row`, or `None` when out of range.
    pub fn column(&self, row: u64) -> Option<u64> {
        self.k.get(usize::try_from(row).ok()?).copied()
    }

    /// The single nonzero of `row` as `(column, value)`.
    pub fn entry(&self, row: u64) -> Option<(u64, Complex64)> {
        let idx = usize::try_from(row).ok()?;
        let col = *self.k.get(idx)?;
        let value = self
            .phase()
            .apply(Complex64::new(f64::from(self.m[idx]), 0.0));
        Some((col, value))
    }

    /// Dense matrix form; limited to [`MAX_DENSE_QUBITS`].
    pub fn dense(&self) -> Result<CMatrix> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::DenseTooLarge {
                n: self.n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let dim = 1usize << self.n;
        let mut out = CMatrix::zeros(dim);
        for row in 0..dim {
            let (col, value) = self.entry(row as u64).expect("row in range");
            out.set(row, col as usize, value);
        }
        Ok(out)
    }
}
